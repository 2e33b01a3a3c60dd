#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ncdual {

using PointPair = std::pair<int, int>;

/// An equivalence relation on a finite labelled set, stored as a partition.
class FinEquivRel {
public:
    FinEquivRel() = default;
    /// Points with the given class index (classes renumbered by first appearance).
    FinEquivRel(std::vector<std::string> points, const std::vector<int>& class_of);

    /// Builds from explicit pairs; throws InputError naming the first violated
    /// law (reflexivity, symmetry, transitivity) or an unknown index.
    static FinEquivRel from_pairs(std::vector<std::string> points, const std::vector<PointPair>& pairs);
    /// Discrete relation (all classes singletons) on n points labelled p0..p{n-1}.
    static FinEquivRel discrete(int n);
    /// Relation with the given class sizes, points labelled p0.. in class order.
    static FinEquivRel with_class_sizes(const std::vector<int>& sizes);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<int>& class_of() const { return class_of_; }
    int class_of(int p) const { return class_of_[p]; }
    int num_classes() const { return num_classes_; }
    std::vector<std::vector<int>> classes() const;
    /// Sorted class sizes.
    std::vector<int> class_sizes() const;

    bool contains(int x, int y) const { return class_of_[x] == class_of_[y]; }
    /// All pairs, lexicographic.
    std::vector<PointPair> pairs() const;
    int index_of(const std::string& label) const;

    bool operator==(const FinEquivRel& o) const
    {
        return points_ == o.points_ && class_of_ == o.class_of_;
    }

private:
    std::vector<std::string> points_;
    std::vector<int> class_of_;
    int num_classes_ = 0;
};

/// Every set partition of {0, .., n-1}, as canonical class-index vectors.
std::vector<std::vector<int>> all_partitions(int n);

} // namespace ncdual

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncdual/duality.hpp"
#include "ncdual/numeric.hpp"

namespace ncdual::acceptance {

inline constexpr int kCriteria = 13;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    int cases = 0;
    int failures = 0;
    /// Worst observed value of the criterion's main residual and its bound.
    double worst = 0.0;
    double bound = 0.0;
    /// One line, e.g. the first failing case.
    std::string detail;
};

CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);
std::vector<CriterionResult> run_all(std::uint64_t seed = kDefaultSeed);

/// "PASS [ 4] Jordan reconstruction (200 cases, worst 3.1e-13 <= 1e-08)"
std::string format_line(const CriterionResult& r);

// Corpora, exposed for tests and benchmarks.

struct AlgebraCase {
    std::string name;
    int ambient_dim = 0;
    std::vector<Matrix> generators;
    /// Planted (block_dim, multiplicity) pairs, sorted.
    std::vector<std::pair<int, int>> structure;
};
std::vector<AlgebraCase> algebra_corpus(std::uint64_t seed);

struct PlantedMatrix {
    Matrix a;
    /// Planted (eigenvalue, block size) pairs.
    std::vector<std::pair<Complex, int>> blocks;
    double condition = 1.0;
};
/// count matrices V J V^{-1}, dim <= max_dim, eigenvalues on a unit grid,
/// cond(V) <= max_condition.
std::vector<PlantedMatrix> jordan_corpus(std::uint64_t seed, int count, int max_dim = 8, double max_condition = 100.0);

/// Random matrix with exact spectrum and condition number: V = U S W.
Matrix conditioned_basis(int n, double condition, Rng& rng);

std::vector<FiniteGroup> group_corpus();

} // namespace ncdual::acceptance

#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a serial reference with
// the same signature; tests compare the two and the benchmark times them.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "ncdual/numeric.hpp"

namespace ncdual::kernels {

/// All products basis[i] * basis[j], row-major in (i, j).
std::vector<Matrix> pairwise_products_serial(std::span<const Matrix> basis);
std::vector<Matrix> pairwise_products_omp(std::span<const Matrix> basis);

/// coeffs(i, t) = <basis[i], targets[t]>_HS.
Matrix hs_coefficients_serial(std::span<const Matrix> basis, std::span<const Matrix> targets);
Matrix hs_coefficients_omp(std::span<const Matrix> basis, std::span<const Matrix> targets);

/// A finite lattice given by flat row-major meet/join tables of side `size`.
struct LatticeTables {
    int size = 0;
    std::span<const int> meet;
    std::span<const int> join;
};

/// Number of triples (a, b, c) with a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c).
std::size_t distributivity_failures_serial(const LatticeTables& t);
std::size_t distributivity_failures_omp(const LatticeTables& t);

/// Runs fn(i) for i in [0, n) across threads and returns the results in index
/// order. The first exception thrown by any task is rethrown after the loop.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn)
{
    std::vector<R> out(n);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ncdual_parallel_map)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace ncdual::kernels

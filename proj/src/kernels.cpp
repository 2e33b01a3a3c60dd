#include "ncdual/kernels.hpp"

namespace ncdual::kernels {

std::vector<Matrix> pairwise_products_serial(std::span<const Matrix> basis)
{
    const std::size_t d = basis.size();
    std::vector<Matrix> out(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out[i * d + j] = basis[i] * basis[j];
    return out;
}

std::vector<Matrix> pairwise_products_omp(std::span<const Matrix> basis)
{
    const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(basis.size());
    std::vector<Matrix> out(static_cast<std::size_t>(d * d));
#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t i = 0; i < d; ++i)
        for (std::ptrdiff_t j = 0; j < d; ++j)
            out[static_cast<std::size_t>(i * d + j)] = basis[i] * basis[j];
    return out;
}

Matrix hs_coefficients_serial(std::span<const Matrix> basis, std::span<const Matrix> targets)
{
    Matrix c(basis.size(), targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t)
        for (std::size_t i = 0; i < basis.size(); ++i)
            c(i, t) = hs_inner(basis[i], targets[t]);
    return c;
}

Matrix hs_coefficients_omp(std::span<const Matrix> basis, std::span<const Matrix> targets)
{
    const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(basis.size());
    const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(targets.size());
    Matrix c(nb, nt);
#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t t = 0; t < nt; ++t)
        for (std::ptrdiff_t i = 0; i < nb; ++i)
            c(i, t) = hs_inner(basis[i], targets[t]);
    return c;
}

namespace {

bool distributes(const LatticeTables& t, int a, int b, int c)
{
    const int n = t.size;
    const int lhs = t.meet[a * n + t.join[b * n + c]];
    const int rhs = t.join[t.meet[a * n + b] * n + t.meet[a * n + c]];
    return lhs == rhs;
}

} // namespace

std::size_t distributivity_failures_serial(const LatticeTables& t)
{
    std::size_t count = 0;
    for (int a = 0; a < t.size; ++a)
        for (int b = 0; b < t.size; ++b)
            for (int c = 0; c < t.size; ++c)
                if (!distributes(t, a, b, c))
                    ++count;
    return count;
}

std::size_t distributivity_failures_omp(const LatticeTables& t)
{
    std::size_t count = 0;
    const int n = t.size;
#pragma omp parallel for collapse(2) reduction(+ : count) schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (!distributes(t, a, b, c))
                    ++count;
    return count;
}

} // namespace ncdual::kernels

#pragma once
// Small builders shared by the unit tests.
#include <initializer_list>
#include <vector>

#include "ncdual/numeric.hpp"

namespace test {

using ncdual::Complex;
using ncdual::Matrix;

/// Row-major n x n matrix from real entries.
inline Matrix mat(int n, std::initializer_list<double> rows)
{
    Matrix m(n, n);
    auto it = rows.begin();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = *it++;
    return m;
}

inline Matrix diag(std::initializer_list<Complex> d)
{
    const int n = static_cast<int>(d.size());
    Matrix m = Matrix::Zero(n, n);
    int i = 0;
    for (Complex z : d) {
        m(i, i) = z;
        ++i;
    }
    return m;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b)
{
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

/// Relative Frobenius distance.
inline double rel(const Matrix& x, const Matrix& ref)
{
    return (x - ref).norm() / std::max(1.0, ref.norm());
}

} // namespace test

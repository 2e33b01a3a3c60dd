#include <doctest.h>

#include <stdexcept>

#include "ncdual/kernels.hpp"
#include "ncdual/oml.hpp"

using namespace ncdual;

TEST_SUITE("kernels") {

TEST_CASE("pairwise products: parallel matches serial and the direct product")
{
    Rng rng(21);
    for (int count : {1, 4, 9}) {
        std::vector<Matrix> b;
        for (int i = 0; i < count; ++i)
            b.push_back(random_complex(3, 3, rng));
        const auto s = kernels::pairwise_products_serial(b);
        const auto p = kernels::pairwise_products_omp(b);
        REQUIRE(s.size() == static_cast<std::size_t>(count * count));
        REQUIRE(p.size() == s.size());
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j) {
                CHECK((s[i * count + j] - b[i] * b[j]).norm() == 0.0);
                CHECK((p[i * count + j] - s[i * count + j]).norm() == 0.0);
            }
    }
}

TEST_CASE("HS coefficients: parallel matches serial and the trace formula")
{
    Rng rng(22);
    std::vector<Matrix> b, t;
    for (int i = 0; i < 5; ++i)
        b.push_back(random_complex(4, 4, rng));
    for (int i = 0; i < 3; ++i)
        t.push_back(random_complex(4, 4, rng));
    const Matrix s = kernels::hs_coefficients_serial(b, t);
    const Matrix p = kernels::hs_coefficients_omp(b, t);
    REQUIRE(s.rows() == 5);
    REQUIRE(s.cols() == 3);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(s(i, k) - (b[i].adjoint() * t[k]).trace()) < 1e-12);
    CHECK((s - p).norm() < 1e-14);
}

TEST_CASE("distributivity scan: parallel matches serial")
{
    for (const FiniteLattice& l : {boolean_algebra(3), mo2(), pentagon(0)}) {
        const kernels::LatticeTables t{l.size, l.meet, l.join};
        CHECK(kernels::distributivity_failures_serial(t) == kernels::distributivity_failures_omp(t));
    }
    const FiniteLattice b = boolean_algebra(3);
    CHECK(kernels::distributivity_failures_serial({b.size, b.meet, b.join}) == 0);
    const FiniteLattice m = mo2();
    CHECK(kernels::distributivity_failures_serial({m.size, m.meet, m.join}) > 0);
}

TEST_CASE("parallel_map keeps order and propagates exceptions")
{
    const auto sq = kernels::parallel_map<int>(50, [](std::size_t i) { return static_cast<int>(i * i); });
    for (int i = 0; i < 50; ++i)
        CHECK(sq[i] == i * i);
    CHECK_THROWS_AS(kernels::parallel_map<int>(10,
                                               [](std::size_t i) -> int {
                                                   if (i == 7)
                                                       throw std::runtime_error("seven");
                                                   return 0;
                                               }),
                    std::runtime_error);
}

}

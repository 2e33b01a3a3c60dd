#include <doctest.h>

#include <cmath>

#include "ncdual/analytic.hpp"
#include "ncdual/errors.hpp"

using namespace ncdual;

namespace {

double factorial(int d)
{
    return std::tgamma(d + 1.0);
}

double binom(int n, int k)
{
    return factorial(n) / (factorial(k) * factorial(n - k));
}

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("parse named and coefficient forms")
{
    CHECK(AnalyticFunction::parse("exp").kind == AnalyticFunction::Kind::exp);
    CHECK(AnalyticFunction::parse(" sin ").kind == AnalyticFunction::Kind::sin);
    CHECK(AnalyticFunction::parse("cos").kind == AnalyticFunction::Kind::cos);
    const auto p = AnalyticFunction::parse("poly:1,-2.5,1+2j");
    REQUIRE(p.numerator.size() == 3);
    CHECK(p.numerator[1] == Complex(-2.5, 0));
    CHECK(p.numerator[2] == Complex(1, 2));
    const auto r = AnalyticFunction::parse("rational:1;1,-1");
    CHECK(r.kind == AnalyticFunction::Kind::rational);
    CHECK(r.denominator.size() == 2);
    CHECK(AnalyticFunction::parse("poly:0,-1j").numerator[1] == Complex(0, -1));
    for (const char* bad : {"", "tan", "poly:", "poly:1,,2", "rational:1", "poly:abc"})
        CHECK_THROWS_AS(AnalyticFunction::parse(bad), InputError);
}

TEST_CASE("evaluation and round-trip through name()")
{
    const Complex z(0.3, -0.7);
    CHECK(std::abs(AnalyticFunction::parse("exp")(z) - std::exp(z)) < 1e-14);
    CHECK(std::abs(AnalyticFunction::parse("sin")(z) - std::sin(z)) < 1e-14);
    const auto p = AnalyticFunction::parse("poly:1,2,3");
    CHECK(std::abs(p(z) - (1.0 + 2.0 * z + 3.0 * z * z)) < 1e-14);
    const auto q = AnalyticFunction::parse(p.name());
    CHECK(q.numerator == p.numerator);
    const auto r = AnalyticFunction::parse("rational:1,1j;2,0,1");
    CHECK(std::abs(AnalyticFunction::parse(r.name())(z) - r(z)) < 1e-14);
}

TEST_CASE("Taylor coefficients of exp, sin and cos")
{
    const Complex z(0.4, 1.1);
    const auto e = AnalyticFunction::parse("exp").taylor(z, 6);
    const auto s = AnalyticFunction::parse("sin").taylor(z, 6);
    const auto c = AnalyticFunction::parse("cos").taylor(z, 6);
    // Derivatives of sin cycle through cos, -sin, -cos, sin.
    const Complex ds[4] = {std::sin(z), std::cos(z), -std::sin(z), -std::cos(z)};
    const Complex dc[4] = {std::cos(z), -std::sin(z), -std::cos(z), std::sin(z)};
    for (int d = 0; d < 6; ++d) {
        CHECK(std::abs(e[d] - std::exp(z) / factorial(d)) < 1e-13);
        CHECK(std::abs(s[d] - ds[d % 4] / factorial(d)) < 1e-13);
        CHECK(std::abs(c[d] - dc[d % 4] / factorial(d)) < 1e-13);
    }
}

TEST_CASE("Taylor coefficients of polynomials by binomial expansion")
{
    const std::vector<Complex> coef{Complex(1, 1), -2.0, 0.5, Complex(0, 3)};
    const auto p = AnalyticFunction::polynomial(coef);
    const Complex z0(-0.6, 0.2);
    const auto t = p.taylor(z0, 6);
    for (int d = 0; d < 6; ++d) {
        Complex want = 0.0;
        for (int k = d; k < static_cast<int>(coef.size()); ++k)
            want += coef[k] * binom(k, d) * std::pow(z0, k - d);
        CHECK(std::abs(t[d] - want) < 1e-12);
    }
}

TEST_CASE("Taylor coefficients of 1 / (1 - z) and poles")
{
    const auto r = AnalyticFunction::rational({1.0}, {1.0, -1.0});
    const Complex z0(0.25, 0.5);
    const auto t = r.taylor(z0, 7);
    for (int d = 0; d < 7; ++d)
        CHECK(std::abs(t[d] - 1.0 / std::pow(1.0 - z0, d + 1)) < 1e-11);
    CHECK_THROWS_AS(r.taylor(1.0, 3), InputError);
}

}

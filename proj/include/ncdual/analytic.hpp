#pragma once

#include <string>
#include <vector>

#include "ncdual/numeric.hpp"

namespace ncdual {

/// A named holomorphic function usable by the functional calculus.
///
/// Text forms: "exp", "sin", "cos", "poly:c0,c1,..." (ascending powers) and
/// "rational:p0,p1,...;q0,q1,..." for p(z)/q(z). Coefficients are real or
/// written as "re+imj".
struct AnalyticFunction {
    enum class Kind { exp, sin, cos, polynomial, rational };

    Kind kind = Kind::exp;
    std::vector<Complex> numerator;
    std::vector<Complex> denominator;

    static AnalyticFunction parse(const std::string& text);
    static AnalyticFunction polynomial(std::vector<Complex> coeffs);
    static AnalyticFunction rational(std::vector<Complex> p, std::vector<Complex> q);

    Complex operator()(Complex z) const;
    /// f^(d)(z) / d! for d = 0 .. order-1. Throws InputError at a pole.
    std::vector<Complex> taylor(Complex z, int order) const;
    std::string name() const;
};

} // namespace ncdual

#include "ncdual/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "ncdual/errors.hpp"

namespace ncdual {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& whole)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != s.size())
        throw InputError("bad coefficient '" + whole + "'");
    return v;
}

// "1.5", "-2j", "1-2j", "3e-1+4j"
Complex parse_complex(const std::string& raw)
{
    const std::string s = trim(raw);
    if (s.empty())
        throw InputError("empty coefficient");
    if (s.back() != 'j' && s.back() != 'i')
        return {to_double(s, s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading one.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    if (split == std::string::npos) {
        if (body.empty() || body == "+" || body == "-")
            return {0.0, body == "-" ? -1.0 : 1.0};
        return {0.0, to_double(body, s)};
    }
    const std::string re = body.substr(0, split), im = body.substr(split);
    const double imv = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : to_double(im, s);
    return {to_double(re, s), imv};
}

std::vector<Complex> parse_list(const std::string& s)
{
    std::vector<Complex> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        out.push_back(parse_complex(s.substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

Complex horner(const std::vector<Complex>& c, Complex z)
{
    Complex v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * z + *it;
    return v;
}

std::vector<Complex> poly_taylor(const std::vector<Complex>& p, Complex z, int order)
{
    // Repeated synthetic division by (w - z) yields the shifted coefficients.
    std::vector<Complex> work = p;
    std::vector<Complex> out(order, 0.0);
    for (int d = 0; d < order && !work.empty(); ++d) {
        std::vector<Complex> q(work.size() > 1 ? work.size() - 1 : 0);
        Complex acc = 0.0;
        for (std::size_t k = work.size(); k-- > 0;) {
            acc = acc * z + work[k];
            if (k > 0)
                q[k - 1] = acc;
        }
        out[d] = acc;
        work = std::move(q);
    }
    return out;
}

std::string coeff_text(const std::vector<Complex>& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ",";
        char buf[64];
        if (c[i].imag() == 0.0)
            std::snprintf(buf, sizeof buf, "%.17g", c[i].real());
        else
            std::snprintf(buf, sizeof buf, "%.17g%+.17gj", c[i].real(), c[i].imag());
        s += buf;
    }
    return s;
}

} // namespace

AnalyticFunction AnalyticFunction::parse(const std::string& text)
{
    const std::string t = trim(text);
    if (t == "exp")
        return {Kind::exp, {}, {}};
    if (t == "sin")
        return {Kind::sin, {}, {}};
    if (t == "cos")
        return {Kind::cos, {}, {}};
    if (t.rfind("poly:", 0) == 0)
        return polynomial(parse_list(t.substr(5)));
    if (t.rfind("rational:", 0) == 0) {
        const std::string body = t.substr(9);
        const auto semi = body.find(';');
        if (semi == std::string::npos)
            throw InputError("rational function needs 'p0,..;q0,..'");
        return rational(parse_list(body.substr(0, semi)), parse_list(body.substr(semi + 1)));
    }
    throw InputError("unknown function '" + t + "' (expected exp, sin, cos, poly:..., rational:...)");
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coeffs)
{
    if (coeffs.empty())
        throw InputError("polynomial needs at least one coefficient");
    return {Kind::polynomial, std::move(coeffs), {}};
}

AnalyticFunction AnalyticFunction::rational(std::vector<Complex> p, std::vector<Complex> q)
{
    if (p.empty() || q.empty())
        throw InputError("rational function needs numerator and denominator coefficients");
    return {Kind::rational, std::move(p), std::move(q)};
}

Complex AnalyticFunction::operator()(Complex z) const
{
    switch (kind) {
    case Kind::exp:
        return std::exp(z);
    case Kind::sin:
        return std::sin(z);
    case Kind::cos:
        return std::cos(z);
    case Kind::polynomial:
        return horner(numerator, z);
    case Kind::rational:
        return horner(numerator, z) / horner(denominator, z);
    }
    return 0.0;
}

std::vector<Complex> AnalyticFunction::taylor(Complex z, int order) const
{
    std::vector<Complex> out(order, 0.0);
    double fact = 1.0;
    switch (kind) {
    case Kind::exp: {
        const Complex e = std::exp(z);
        for (int d = 0; d < order; ++d) {
            if (d > 0)
                fact *= d;
            out[d] = e / fact;
        }
        return out;
    }
    case Kind::sin:
    case Kind::cos: {
        const Complex s = std::sin(z), c = std::cos(z);
        // Derivatives cycle with period four.
        const Complex cyc_sin[4] = {s, c, -s, -c};
        const Complex cyc_cos[4] = {c, -s, -c, s};
        for (int d = 0; d < order; ++d) {
            if (d > 0)
                fact *= d;
            out[d] = (kind == Kind::sin ? cyc_sin[d % 4] : cyc_cos[d % 4]) / fact;
        }
        return out;
    }
    case Kind::polynomial:
        return poly_taylor(numerator, z, order);
    case Kind::rational: {
        const auto p = poly_taylor(numerator, z, order);
        const auto q = poly_taylor(denominator, z, order);
        double scale = 0.0;
        for (const auto& c : denominator)
            scale = std::max(scale, std::abs(c));
        if (std::abs(q[0]) <= 1e-14 * std::max(scale, 1.0))
            throw InputError("rational function has a pole at a spectral point");
        for (int d = 0; d < order; ++d) {
            Complex acc = p[d];
            for (int i = 1; i <= d; ++i)
                acc -= q[i] * out[d - i];
            out[d] = acc / q[0];
        }
        return out;
    }
    }
    return out;
}

std::string AnalyticFunction::name() const
{
    switch (kind) {
    case Kind::exp:
        return "exp";
    case Kind::sin:
        return "sin";
    case Kind::cos:
        return "cos";
    case Kind::polynomial:
        return "poly:" + coeff_text(numerator);
    case Kind::rational:
        return "rational:" + coeff_text(numerator) + ";" + coeff_text(denominator);
    }
    return {};
}

} // namespace ncdual

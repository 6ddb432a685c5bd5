#pragma once

#include <cstddef>
#include <string>

#include "errors.hpp"
#include "exactnum.hpp"
#include "fracpoly.hpp"
#include "polynomial.hpp"

namespace fracleibniz {

// 0F1(c; x) = sum_k x^k / (k! (c)^(k)) truncated after x^K (rising Pochhammer).
inline Poly hyp0f1_series(const Rational& c, std::size_t truncation)
{
    if (is_nonpositive_integer(c)) throw pole_error("0F1 parameter c = " + to_string(c) + " is a nonpositive integer");
    std::vector<Rational> coeffs(truncation + 1);
    for (std::size_t k = 0; k <= truncation; ++k) coeffs[k] = 1 / (factorial(k) * pochhammer_rising(c, k));
    return Poly(std::move(coeffs));
}

/// (prefactor / Gamma(1+a)) * 0F1(parameter; x), expanded to x^K on demand.
struct HypSeriesResult {
    Rational order;
    Rational parameter;
    Rational prefactor;
    std::size_t truncation = 0;

    GammaBase base() const { return GammaBase::one_plus_a; }

    // Rational coefficients of the series with the 1/Gamma(1+a) factor left out.
    Poly expand() const { return scale(hyp0f1_series(parameter, truncation), prefactor); }
};

/// (1/Gamma(1+a)) * sum_j c_j x^j, exact through x^truncation.
struct HypSeries {
    Rational order;
    std::size_t truncation = 0;
    Poly coefficients;

    GammaBase base() const { return GammaBase::one_plus_a; }

    friend bool operator==(const HypSeries& lhs, const HypSeries& rhs)
    {
        return lhs.order == rhs.order && lhs.truncation == rhs.truncation && lhs.coefficients == rhs.coefficients;
    }
};

// Drops every coefficient above x^degree.
inline Poly truncate_poly(const Poly& p, std::size_t degree)
{
    if (p.degree() <= static_cast<long>(degree)) return p;
    return Poly(std::vector<Rational>(p.coefficients().begin(), p.coefficients().begin() + degree + 1));
}

/// D^a 0F1(n+1; x) = Gamma(n+1)/Gamma(n+1+a) * 0F1(n+1+a; x).
///
/// Over the Gamma(1+a) base the prefactor is n!/prod_{i=1}^{n}(i+a). Negative
/// integer orders are outside the identity's domain.
inline HypSeriesResult frac_deriv_0f1(std::size_t n, const Rational& a, std::size_t truncation)
{
    if (n == 0) throw std::invalid_argument("frac_deriv_0f1 requires a positive integer n");
    if (is_negative_integer(a)) throw pole_error("order a = " + to_string(a) + " is a negative integer");
    Rational c = Rational(n + 1) + a;
    if (is_nonpositive_integer(c)) throw pole_error("0F1 parameter n+1+a = " + to_string(c) + " is a nonpositive integer");
    Rational denom = pochhammer_rising(1 + a, n);
    return HypSeriesResult{a, c, factorial(n) / denom, truncation};
}

} // namespace fracleibniz

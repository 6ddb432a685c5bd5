#pragma once

// Product rules: the integer Leibniz rule, its truncated fractional form
// for x^n f, the 0F1 variant, the operator form for Sheffer sequences, and
// the per-family fractional rules with their closed-form weights.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exactnum.hpp"
#include "fracpoly.hpp"
#include "hypergeometric.hpp"
#include "polynomial.hpp"
#include "series.hpp"
#include "sheffer.hpp"

namespace fracleibniz {

inline Rational binomial_rational(const Rational& a, std::size_t m) { return pochhammer_falling(a, m) / factorial(m); }

// D^n [f g] = sum_m C(n,m) f^(n-m) g^(m)
inline Poly integer_leibniz(const Poly& f, const Poly& g, std::size_t n)
{
    Poly out;
    for (std::size_t m = 0; m <= n; ++m) out += scale(derivative(f, n - m) * derivative(g, m), binomial(n, m));
    return out;
}

namespace detail {

inline void require_fractional_order(const Rational& a, const char* who)
{
    if (is_positive_integer(a))
        throw integer_order_error(std::string(who) + ": order a = " + to_string(a)
                                  + " is a positive integer; use the ordinary derivative of the expanded product");
}

} // namespace detail

/// D^a [x^n f] = sum_{m=0}^{n} C(n,m) (a)_m D^(a-m) f * x^(n-m).
///
/// The n+1 terms are the whole sum: the binomial C(n,m) vanishes past n.
/// Each D^(a-m) f already sits on the common Gamma(1-a) base, so the
/// x^(n-m) factor just shifts term indices.
inline FracPoly thm_xn_product(std::size_t n, const Poly& f, const Rational& a)
{
    detail::require_fractional_order(a, "thm_xn_product");
    if (a == 0) return FracPoly::from_poly(shift(f, n)); // (0)_m = 0 for m >= 1
    FracPoly out(a, GammaBase::one_minus_a);
    for (std::size_t m = 0; m <= n; ++m) {
        Rational w = binomial(n, m) * pochhammer_falling(a, m);
        if (w == 0) continue;
        out += Poly::monomial(n - m, w) * frac_derivative_in_base(f, a, m);
    }
    return out;
}

/// Dual terminating form sum_{m=0}^{deg f} C(a,m) D^(a-m)(x^n) f^(m).
///
/// Independent of thm_xn_product: here the fractional operator falls on
/// x^n and the integer derivatives on f, so the sum has deg f + 1 terms.
inline FracPoly classical_leibniz_terminating(std::size_t n, const Poly& f, const Rational& a)
{
    detail::require_fractional_order(a, "classical_leibniz_terminating");
    if (a == 0) return FracPoly::from_poly(shift(f, n));
    FracPoly out(a, GammaBase::one_minus_a);
    const Poly xn = Poly::monomial(n);
    for (long m = 0; m <= f.degree(); ++m) {
        const auto mu = static_cast<std::size_t>(m);
        Rational w = binomial_rational(a, mu);
        if (w == 0) continue;
        out += w * (derivative(f, mu) * frac_derivative_in_base(xn, a, mu));
    }
    return out;
}

// Where the 0F1 product sum stops.
enum class HypTruncation {
    // Sum runs over every m with f^(m) != 0; Gamma ratios past m = n are
    // continued analytically. Agrees with ordinary differentiation.
    complete,
    // Sum stops at m = n. Drops terms
    // n < m <= min(a, deg f) when the order exceeds n and deg f > n.
    at_n,
};

/// D^a [0F1(n+1; x) f(x)] as a truncated series over the Gamma(1+a) base.
///
/// Term m is C(a,m) f^(m)(x) Gamma(n+1)/Gamma(n+1-m+a) 0F1(n+1-m+a; x). For
/// m <= n the Gamma ratio over Gamma(1+a) is 1/prod_{i=1}^{n-m}(i+a), which
/// equals the C(n,m)(a)_m Gamma(n+1-m)/Gamma(n+1-m+a) weighting; for m > n
/// it is the falling product (a)_{m-n}.
inline HypSeries thm_0f1_product(std::size_t n, const Poly& f, const Rational& a, std::size_t truncation,
                                 HypTruncation mode = HypTruncation::complete)
{
    if (n == 0) throw std::invalid_argument("thm_0f1_product requires a positive integer n");
    if (is_negative_integer(a)) throw pole_error("order a = " + to_string(a) + " is a negative integer");

    const std::size_t upper = mode == HypTruncation::at_n
        ? n
        : std::max<std::size_t>(n, f.is_zero() ? 0 : static_cast<std::size_t>(f.degree()));
    Poly sum;
    for (std::size_t m = 0; m <= upper; ++m) {
        Poly fm = derivative(f, m);
        if (fm.is_zero()) continue;
        Rational weight = pochhammer_falling(a, m) / factorial(m) * factorial(n);
        if (weight == 0) continue;
        if (m <= n)
            weight /= pochhammer_rising(1 + a, n - m);
        else
            weight *= pochhammer_falling(a, m - n);
        if (weight == 0) continue;
        Rational c = Rational(n + 1) - Rational(m) + a;
        if (is_nonpositive_integer(c))
            throw pole_error("0F1 parameter n+1-m+a = " + to_string(c) + " is a nonpositive integer (m = " + std::to_string(m) + ")");
        sum += truncate_poly(scale(fm * hyp0f1_series(c, truncation), weight), truncation);
    }
    return HypSeries{a, truncation, sum};
}

/// One weight entry: the coefficient in front of (a)_u D^(a-u) f.
struct WeightEntry {
    std::size_t u = 0;
    Rational coefficient;

    // coefficient * (a)_u as a polynomial in a.
    Poly polynomial_in_a() const { return scale(factorial_polynomial(u, -1), coefficient); }
    Rational at(const Rational& a) const { return coefficient * pochhammer_falling(a, u); }
};

// Inner-sum weight table w_{m,u} for each family; entries with zero coefficient are omitted.
//
// Each table is read off from kinv(t)^u / u! = sum_m w_{m,u} t^m / m!.
// The rising-factorial table is the unsigned |S1(m,u)|: the (-1)^u S1(m,u)
// sign pattern differs from it by (-1)^m (see rising_weights_naive_dual).
inline std::vector<WeightEntry> product_rule_weights(FamilyKind kind, std::size_t m)
{
    std::vector<WeightEntry> out;
    auto push = [&](std::size_t u, Rational c) {
        if (c != 0) out.push_back({u, std::move(c)});
    };
    switch (kind) {
    case FamilyKind::monomial:
    case FamilyKind::appell:
        push(m, Rational(1));
        break;
    case FamilyKind::falling:
        for (std::size_t u = 0; u <= m; ++u) push(u, stirling_first(m, u));
        break;
    case FamilyKind::rising:
        for (std::size_t u = 0; u <= m; ++u) {
            Rational s = stirling_first(m, u);
            push(u, (m - u) % 2 == 0 ? s : Rational(-s));
        }
        break;
    case FamilyKind::exponential:
        for (std::size_t u = 0; u <= m; ++u) push(u, stirling_second(m, u));
        break;
    case FamilyKind::laguerre:
        // Starting the inner sum at u = 1 would make the m = 0 term vanish;
        // the m = 0 table is the identity so that L_0 f maps to D^a f.
        if (m == 0) {
            push(0, Rational(1));
            break;
        }
        for (std::size_t u = 1; u <= m; ++u) {
            Rational c = binomial(m - 1, u - 1) * factorial(m) / factorial(u);
            push(u, u % 2 == 0 ? c : Rational(-c));
        }
        break;
    case FamilyKind::generic:
        throw unsupported_family_error("no closed-form weights for generic Sheffer families");
    }
    return out;
}

// S1(m,u) (-1)^u, the sign-flipped falling table. It matches the rising
// weights only for even m.
inline std::vector<WeightEntry> rising_weights_naive_dual(std::size_t m)
{
    std::vector<WeightEntry> out;
    for (std::size_t u = 0; u <= m; ++u) {
        Rational s = stirling_first(m, u);
        if (s != 0) out.push_back({u, u % 2 == 0 ? s : Rational(-s)});
    }
    return out;
}

/// D^a [s_n f] = sum_m C(n,m) s_{n-m}(x) sum_u w_{m,u} (a)_u D^(a-u) f.
///
/// Terms are grouped by u: P_u(x) = sum_m C(n,m) w_{m,u} s_{n-m}(x) so each
/// D^(a-u) f is built once.
inline FracPoly frac_product_rule(const ShefferFamily& fam, std::size_t n, const Poly& f, const Rational& a)
{
    if (fam.kind() == FamilyKind::generic)
        throw unsupported_family_error("family " + fam.name() + " has no closed-form product-rule weights");
    detail::require_fractional_order(a, "frac_product_rule");

    std::vector<Poly> by_u(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        Poly s = fam.polynomial(n - m);
        for (const auto& w : product_rule_weights(fam.kind(), m)) by_u[w.u] += scale(s, binomial(n, m) * w.coefficient);
    }

    if (a == 0) return FracPoly::from_poly(by_u[0] * f); // only u = 0 survives (0)_u
    FracPoly out(a, GammaBase::one_minus_a);
    for (std::size_t u = 0; u <= n; ++u) {
        if (by_u[u].is_zero()) continue;
        Rational au = pochhammer_falling(a, u);
        if (au == 0) continue;
        out += scale(by_u[u], au) * frac_derivative_in_base(f, a, u);
    }
    return out;
}

// f = 1 specialization: the fractional derivative of s_n itself.
inline FracPoly cor_frac_sheffer(const ShefferFamily& fam, std::size_t n, const Rational& a)
{
    return frac_product_rule(fam, n, Poly::constant(1), a);
}

/// Ap_{n-a}(x) = Gamma(n-a+1)/n! * D^a Ap_n(x) for an Appell family.
///
/// Gamma(n-a+1)/Gamma(1-a) = prod_{i=1}^{n}(i-a), so the Gamma factor
/// cancels against the shared base and the result has no Gamma base at all.
inline FracPoly appell_fractional_order(const ShefferFamily& fam, std::size_t n, const Rational& a)
{
    if (!is_appell_kind(fam.kind())) throw unsupported_family_error("family " + fam.name() + " is not Appell");
    FracPoly d = cor_frac_sheffer(fam, n, a);
    if (a == 0) return d;
    FracPoly::term_map terms;
    Rational factor = gamma_shift_product(a, n) / factorial(n);
    for (const auto& [k, c] : d.terms()) terms.emplace(k, c * factor);
    return FracPoly(a, GammaBase::none, std::move(terms));
}

// Integer order j: plain j-fold derivative of s_n.
inline Poly integer_order_sheffer(const ShefferFamily& fam, std::size_t n, std::size_t j)
{
    return derivative(fam.polynomial(n), j);
}

// Side conditions attached to the corollaries; reported, never enforced,
// since the Gamma-product form is pole-free more broadly.
inline std::vector<std::string> cor_side_condition_warnings(const ShefferFamily& fam, std::size_t n, const Rational& a)
{
    std::vector<std::string> out;
    if (is_appell_kind(fam.kind())) {
        if (!(Rational(n) - a > 0)) out.push_back("Appell corollary is stated for n - a > 0");
    } else if (!(a > 0)) {
        out.push_back(to_string(fam.kind()) + " corollary is stated for a > 0");
    }
    return out;
}

/// Right-hand side of the operator product theorem for a polynomial symbol v:
///
///     v(D)[s_n j] = sum_m C(n,m) s_{n-m}(x) (d/dr)^m [v(D + kinv(r)) j(x)] at r = 0,
///
/// with D held constant under d/dr. Expanding (D + u)^i binomially with
/// u = kinv(r) gives (d/dr)^m u^l |_{r=0} = m! [r^m] kinv^l.
inline Poly generalized_operator_product(const ShefferFamily& fam, std::size_t n, const Poly& v, const Poly& j)
{
    const std::size_t order = std::max<std::size_t>(n, 1);
    PowerSeries kinv = fam.kinv(order);
    const std::size_t max_power = v.is_zero() ? 0 : static_cast<std::size_t>(v.degree());
    std::vector<PowerSeries> kinv_pow;
    kinv_pow.push_back(PowerSeries::constant(Rational(1), order));
    for (std::size_t l = 1; l <= max_power; ++l) kinv_pow.push_back(kinv_pow.back() * kinv);

    Poly out;
    for (std::size_t m = 0; m <= n; ++m) {
        Poly inner;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Rational& vi = v.coefficient(i);
            if (vi == 0) continue;
            for (std::size_t l = 0; l <= i; ++l) {
                Rational c = vi * binomial(i, l) * factorial(m) * kinv_pow[l].coefficient(m);
                if (c != 0) inner += scale(derivative(j, i - l), c);
            }
        }
        if (!inner.is_zero()) out += scale(fam.polynomial(n - m) * inner, binomial(n, m));
    }
    return out;
}

// Left-hand side: v(D) applied directly to the expanded product.
inline Poly generalized_operator_lhs(const ShefferFamily& fam, std::size_t n, const Poly& v, const Poly& j)
{
    return apply_poly_operator(v, fam.polynomial(n) * j);
}

/// k(D)[x^n f] = sum_{m=0}^{n} C(n,m) x^(n-m) k^(m)(D)[f], with k^(m) the
/// m-th formal derivative of the symbol.
///
/// k must be truncated at or beyond n + deg f; a shorter series cannot
/// represent the operator on this input and raises truncation_error.
inline Poly cor_k_operator_xn(const PowerSeries& k, std::size_t n, const Poly& f)
{
    const long need = static_cast<long>(n) + std::max<long>(f.degree(), 0);
    if (static_cast<long>(k.order()) < need)
        throw truncation_error("operator symbol truncated at " + std::to_string(k.order()) + " but n + deg f = "
                               + std::to_string(need));
    Poly out;
    PowerSeries km = k;
    for (std::size_t m = 0; m <= n; ++m) {
        if (m > 0) km = derivative(km);
        out += shift(scale(apply_series_operator(km, f), binomial(n, m)), n - m);
    }
    return out;
}

} // namespace fracleibniz

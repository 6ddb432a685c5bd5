#pragma once

// Canonical representation of Riemann–Liouville results on polynomials.
//
// Every D^a of a polynomial (lower terminal 0) is a finite sum of x^(k-a)
// with coefficients k!/Gamma(k+1-a). Since
//     Gamma(k+1-a) = Gamma(1-a) * prod_{i=1}^{k} (i-a),
// all terms share the single transcendental factor 1/Gamma(1-a) and the
// remaining coefficients are rational. Identity checks between two such
// results therefore reduce to exact rational comparison.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "exactnum.hpp"
#include "polynomial.hpp"

namespace fracleibniz {

enum class GammaBase {
    one_minus_a, // value carries 1/Gamma(1-a): derivative-side results
    one_plus_a,  // value carries 1/Gamma(1+a): 0F1-side results
    none,        // no Gamma factor
};

inline std::string to_string(GammaBase base)
{
    switch (base) {
    case GammaBase::one_minus_a: return "Gamma(1-a)";
    case GammaBase::one_plus_a: return "Gamma(1+a)";
    case GammaBase::none: return "none";
    }
    return "?";
}

// prod_{i=1}^{k} (i - a), i.e. Gamma(k+1-a)/Gamma(1-a).
inline Rational gamma_shift_product(const Rational& a, std::size_t k) { return pochhammer_rising(1 - a, k); }

/// (1/base) * sum_k c_k x^(k-a), with no stored zero coefficients.
class FracPoly {
public:
    using term_map = std::map<std::size_t, Rational>;

    FracPoly() : order_(0), base_(GammaBase::none) {}

    FracPoly(Rational order, GammaBase base, term_map terms = {})
        : order_(std::move(order)), base_(base), terms_(std::move(terms))
    {
        if (base_ == GammaBase::one_minus_a && is_nonneg_integer(order_))
            throw integer_order_error("Gamma(1-a) base is undefined for nonnegative integer order a = "
                                      + fracleibniz::to_string(order_));
        if (base_ == GammaBase::one_plus_a && is_negative_integer(order_))
            throw pole_error("Gamma(1+a) base has a pole at a = " + fracleibniz::to_string(order_));
        prune();
    }

    // Plain polynomial embedded as an order-0 result without a Gamma factor.
    static FracPoly from_poly(const Poly& p)
    {
        term_map terms;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (p.coefficient(k) != 0) terms.emplace(k, p.coefficient(k));
        return FracPoly(Rational(0), GammaBase::none, std::move(terms));
    }

    const Rational& order() const { return order_; }
    GammaBase base() const { return base_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(std::size_t k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Exponent of x carried by term k.
    Rational exponent(std::size_t k) const { return Rational(k) - order_; }

    // Recovers the polynomial when the order is 0 and there is no Gamma factor.
    Poly to_poly() const
    {
        if (order_ != 0 || base_ != GammaBase::none) throw mismatch_error("FracPoly is not a plain polynomial");
        std::vector<Rational> c(terms_.empty() ? 0 : terms_.rbegin()->first + 1, Rational(0));
        for (const auto& [k, v] : terms_) c[k] = v;
        return Poly(std::move(c));
    }

    FracPoly& operator+=(const FracPoly& rhs)
    {
        check_compatible(rhs);
        for (const auto& [k, v] : rhs.terms_) terms_[k] += v;
        prune();
        return *this;
    }

    FracPoly& operator-=(const FracPoly& rhs)
    {
        check_compatible(rhs);
        for (const auto& [k, v] : rhs.terms_) terms_[k] -= v;
        prune();
        return *this;
    }

    friend FracPoly operator+(FracPoly lhs, const FracPoly& rhs) { return lhs += rhs; }
    friend FracPoly operator-(FracPoly lhs, const FracPoly& rhs) { return lhs -= rhs; }

    friend FracPoly operator-(FracPoly u)
    {
        for (auto& [k, v] : u.terms_) v = -v;
        return u;
    }

    friend FracPoly operator*(FracPoly u, const Rational& c)
    {
        for (auto& [k, v] : u.terms_) v *= c;
        u.prune();
        return u;
    }

    friend FracPoly operator*(const Rational& c, FracPoly u) { return std::move(u) * c; }

    // Poly scaling: x^j times the term x^(k-a) is the term x^(k+j-a).
    friend FracPoly operator*(const Poly& p, const FracPoly& u)
    {
        term_map out;
        for (std::size_t j = 0; j < p.size(); ++j) {
            const Rational& pj = p.coefficient(j);
            if (pj == 0) continue;
            for (const auto& [k, v] : u.terms_) out[k + j] += pj * v;
        }
        FracPoly r(u.order_, u.base_);
        r.terms_ = std::move(out);
        r.prune();
        return r;
    }

    friend FracPoly operator*(const FracPoly& u, const Poly& p) { return p * u; }

    // Exact structural equality: same order, same base, identical canonical terms.
    friend bool operator==(const FracPoly& u, const FracPoly& v)
    {
        return u.order_ == v.order_ && u.base_ == v.base_ && u.terms_ == v.terms_;
    }

private:
    void check_compatible(const FracPoly& rhs) const
    {
        if (order_ != rhs.order_ || base_ != rhs.base_)
            throw mismatch_error("FracPoly operands differ in order or Gamma base: a = " + fracleibniz::to_string(order_)
                                 + " vs " + fracleibniz::to_string(rhs.order_));
    }

    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    Rational order_;
    GammaBase base_;
    term_map terms_;
};

inline FracPoly fracpoly_add(const FracPoly& u, const FracPoly& v) { return u + v; }
inline FracPoly fracpoly_sub(const FracPoly& u, const FracPoly& v) { return u - v; }
inline FracPoly fracpoly_scale(const FracPoly& u, const Rational& c) { return u * c; }
inline FracPoly fracpoly_scale(const FracPoly& u, const Poly& p) { return p * u; }
inline bool fracpoly_equal(const FracPoly& u, const FracPoly& v) { return u == v; }

/// D^(a-u) f written over the shared Gamma(1-a) base.
///
/// D^(a-u) x^k = k!/Gamma(k+1-a+u) x^(k+u-a), so the monomial x^k lands on
/// term index k+u with rational coefficient k!/prod_{i=1}^{k+u}(i-a). With
/// u = 0 this is the plain RL power rule.
inline FracPoly frac_derivative_in_base(const Poly& f, const Rational& a, std::size_t u)
{
    FracPoly::term_map terms;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Rational& fk = f.coefficient(k);
        if (fk == 0) continue;
        Rational denom = gamma_shift_product(a, k + u);
        if (denom == 0)
            throw pole_error("Gamma(" + std::to_string(k + u + 1) + "-a) product vanishes at a = " + to_string(a));
        terms.emplace(k + u, fk * factorial(k) / denom);
    }
    return FracPoly(a, GammaBase::one_minus_a, std::move(terms));
}

/// Riemann–Liouville derivative of order a (lower terminal 0).
///
/// a = 0 returns the polynomial itself; negative a gives the fractional
/// integral. Positive integer orders throw integer_order_error: those are
/// ordinary derivatives and never construct a Gamma(1-a) base.
inline FracPoly rl_frac_derivative(const Poly& p, const Rational& a)
{
    if (a == 0) return FracPoly::from_poly(p);
    if (is_positive_integer(a))
        throw integer_order_error("order a = " + to_string(a) + " is a positive integer; use the ordinary derivative");
    return frac_derivative_in_base(p, a, 0);
}

// Routes integer orders to ordinary differentiation and everything else to RL.
inline std::variant<Poly, FracPoly> frac_derivative(const Poly& p, const Rational& a)
{
    if (is_nonneg_integer(a)) return derivative(p, static_cast<std::size_t>(numerator(a)));
    return rl_frac_derivative(p, a);
}

} // namespace fracleibniz

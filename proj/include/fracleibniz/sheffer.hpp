#pragma once

// Sheffer sequences from their generating functions
//
//     sum_n s_n(x) t^n / n! = exp(x kinv(t)) / g(kinv(t)),
//
// the built-in families, and the k(D) s_n = n s_{n-1} relation checker.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exactnum.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace fracleibniz {

enum class FamilyKind { monomial, appell, falling, rising, exponential, laguerre, generic };

inline std::string to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::monomial: return "monomial";
    case FamilyKind::appell: return "appell";
    case FamilyKind::falling: return "falling";
    case FamilyKind::rising: return "rising";
    case FamilyKind::exponential: return "exponential";
    case FamilyKind::laguerre: return "laguerre";
    case FamilyKind::generic: return "generic";
    }
    return "?";
}

// Appell families (k(t) = t) share the same product-rule weights.
inline bool is_appell_kind(FamilyKind kind) { return kind == FamilyKind::monomial || kind == FamilyKind::appell; }

// Produces a series truncated at the requested order.
using SeriesSource = std::function<PowerSeries(std::size_t)>;

// Wraps a fixed series; asking for more terms than it holds is a truncation error.
inline SeriesSource fixed_series(PowerSeries s)
{
    return [s = std::move(s)](std::size_t order) { return s.truncate(order); };
}

/// Coefficient table of a polynomial operator applied to a polynomial:
/// sum_i k_i D^i p. Terminates at deg p; the series must reach that far.
inline Poly apply_series_operator(const PowerSeries& k, const Poly& p)
{
    Poly out;
    for (long i = 0; i <= p.degree(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Rational& ki = k.coefficient(idx);
        if (ki != 0) out += scale(derivative(p, idx), ki);
    }
    return out;
}

// Same, for an operator symbol that is a polynomial in t.
inline Poly apply_poly_operator(const Poly& v, const Poly& p)
{
    Poly out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.coefficient(i) != 0) out += scale(derivative(p, i), v.coefficient(i));
    return out;
}

/// A Sheffer sequence given by (g, kinv) together with its family tag.
///
/// Series are produced on demand at whatever truncation an operation needs.
/// Built-ins also carry a closed form; the generating-function path is
/// always available and the two must agree.
class ShefferFamily {
public:
    using ClosedForm = std::function<Poly(std::size_t)>;

    ShefferFamily(std::string name, FamilyKind kind, SeriesSource g, SeriesSource kinv, ClosedForm closed = {},
                  std::optional<Rational> beta = std::nullopt)
        : name_(std::move(name)), kind_(kind), g_(std::move(g)), kinv_(std::move(kinv)), closed_(std::move(closed)),
          beta_(std::move(beta)), cache_(std::make_shared<Cache>())
    {
        PowerSeries g1 = g_(1);
        if (g1.coefficient(0) == 0) throw series_order_error("Sheffer family " + name_ + ": g(0) must be nonzero");
        PowerSeries k1 = kinv_(1);
        if (k1.coefficient(0) != 0 || k1.coefficient(1) == 0)
            throw series_order_error("Sheffer family " + name_ + ": kinv must have order 1");
    }

    const std::string& name() const { return name_; }
    FamilyKind kind() const { return kind_; }
    const std::optional<Rational>& beta() const { return beta_; }
    bool has_closed_form() const { return static_cast<bool>(closed_); }

    PowerSeries g(std::size_t order) const { return g_(order); }
    PowerSeries kinv(std::size_t order) const { return kinv_(order); }

    // The delta series k itself, recovered as the compositional inverse of kinv.
    PowerSeries k(std::size_t order) const { return compositional_inverse(kinv_(std::max<std::size_t>(order, 1))).truncate(order); }

    /// s_n(x) = n! [t^n] exp(x kinv(t)) / g(kinv(t)), with x kept symbolic.
    Poly generating_polynomial(std::size_t n) const
    {
        const std::size_t order = n;
        PowerSeries kinv_t = kinv_(std::max<std::size_t>(order, 1)).truncate(order);
        PowerSeries inv_g = reciprocal(compose(g_(order), kinv_t));

        // x * kinv(t) as a series in t with coefficients in Q[x].
        std::vector<Poly> xk(order + 1);
        for (std::size_t i = 0; i <= order; ++i) xk[i] = Poly::monomial(1, kinv_t.coefficient(i));
        truncated_series<Poly> bivariate = exp_series(truncated_series<Poly>(std::move(xk), order));

        truncated_series<Poly> lifted(convert<Poly>(inv_g), order);
        truncated_series<Poly> gf = bivariate * lifted;
        return scale(gf.coefficient(n), factorial(n));
    }

    std::optional<Poly> closed_form(std::size_t n) const
    {
        if (!closed_) return std::nullopt;
        return closed_(n);
    }

    // s_n via the closed form when available, else the generating function. Cached.
    Poly polynomial(std::size_t n) const
    {
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto it = cache_->polys.find(n);
            if (it != cache_->polys.end()) return it->second;
        }
        Poly p = closed_ ? closed_(n) : generating_polynomial(n);
        std::lock_guard<std::mutex> lock(cache_->mutex);
        cache_->polys.emplace(n, p);
        return p;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::size_t, Poly> polys;
    };

    std::string name_;
    FamilyKind kind_;
    SeriesSource g_;
    SeriesSource kinv_;
    ClosedForm closed_;
    std::optional<Rational> beta_;
    std::shared_ptr<Cache> cache_;
};

inline Poly sheffer_polynomial(const ShefferFamily& fam, std::size_t n) { return fam.polynomial(n); }

/// k(D) s_n = n s_{n-1}, with k(D) applied as a finite differential operator.
inline bool check_sheffer_relation(const ShefferFamily& fam, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("Sheffer relation is stated for n >= 1");
    Poly lhs = apply_series_operator(fam.k(n), fam.polynomial(n));
    Poly rhs = scale(fam.polynomial(n - 1), Rational(n));
    return lhs == rhs;
}

// Built-in families.
namespace families {

namespace detail {

inline SeriesSource unit_series()
{
    return [](std::size_t order) { return PowerSeries::constant(Rational(1), order); };
}

inline SeriesSource identity_series()
{
    return [](std::size_t order) { return PowerSeries::identity(order); };
}

// Bernoulli numbers with B_1 = -1/2: sum_{k=0}^{m} C(m+1, k) B_k = 0.
inline std::vector<Rational> bernoulli_numbers(std::size_t n)
{
    std::vector<Rational> b(n + 1);
    b[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 0; k < m; ++k) acc += binomial(m + 1, k) * b[k];
        b[m] = -acc / Rational(m + 1);
    }
    return b;
}

} // namespace detail

inline ShefferFamily monomial()
{
    return ShefferFamily("monomial", FamilyKind::monomial, detail::unit_series(), detail::identity_series(),
                         [](std::size_t n) { return Poly::monomial(n); });
}

/// Appell family for a user-supplied g; kinv(t) = t.
inline ShefferFamily appell_from_g(SeriesSource g, std::string name = "appell", ShefferFamily::ClosedForm closed = {})
{
    return ShefferFamily(std::move(name), FamilyKind::appell, std::move(g), detail::identity_series(), std::move(closed));
}

inline ShefferFamily appell_from_g(const PowerSeries& g, std::string name = "appell")
{
    return appell_from_g(fixed_series(g), std::move(name));
}

// g = (e^t - 1)/t
inline ShefferFamily bernoulli()
{
    auto g = [](std::size_t order) {
        return PowerSeries::from_generator(order, [](std::size_t n) { return 1 / factorial(n + 1); });
    };
    auto closed = [](std::size_t n) {
        auto b = detail::bernoulli_numbers(n);
        std::vector<Rational> c(n + 1);
        for (std::size_t k = 0; k <= n; ++k) c[n - k] = binomial(n, k) * b[k];
        return Poly(std::move(c));
    };
    return appell_from_g(g, "bernoulli", closed);
}

// g = (e^t + 1)/2
inline ShefferFamily euler()
{
    auto g = [](std::size_t order) {
        return PowerSeries::from_generator(order, [](std::size_t n) {
            return n == 0 ? Rational(1) : Rational(1) / (2 * factorial(n));
        });
    };
    // E_n(x+1) + E_n(x) = 2 x^n  =>  E_n(x) = x^n - (1/2) sum_{k<n} C(n,k) E_k(x)
    auto closed = [](std::size_t n) {
        std::vector<Poly> e;
        for (std::size_t m = 0; m <= n; ++m) {
            Poly acc = Poly::monomial(m);
            for (std::size_t k = 0; k < m; ++k) acc -= scale(e[k], binomial(m, k) / 2);
            e.push_back(acc);
        }
        return e[n];
    };
    return appell_from_g(g, "euler", closed);
}

// Probabilists' Hermite: g = e^{t^2/2}
inline ShefferFamily hermite()
{
    auto g = [](std::size_t order) {
        return PowerSeries::from_generator(order, [](std::size_t n) {
            if (n % 2 == 1) return Rational(0);
            std::size_t j = n / 2;
            return Rational(1) / (factorial(j) * Rational(BigInt(1) << j));
        });
    };
    auto closed = [](std::size_t n) {
        std::vector<Rational> c(n + 1, Rational(0));
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            Rational term = factorial(n) / (factorial(k) * factorial(n - 2 * k) * Rational(BigInt(1) << k));
            c[n - 2 * k] = k % 2 == 0 ? term : Rational(-term);
        }
        return Poly(std::move(c));
    };
    return appell_from_g(g, "hermite", closed);
}

// (x)_n: kinv = ln(1+t)
inline ShefferFamily falling()
{
    auto closed = [](std::size_t n) {
        std::vector<Rational> c(n + 1);
        for (std::size_t m = 0; m <= n; ++m) c[m] = stirling_first(n, m);
        return Poly(std::move(c));
    };
    return ShefferFamily("falling", FamilyKind::falling, detail::unit_series(),
                         [](std::size_t order) { return series::log1p(order); }, closed);
}

// x^(n) rising: kinv = -ln(1-t)
inline ShefferFamily rising()
{
    auto closed = [](std::size_t n) {
        std::vector<Rational> c(n + 1);
        for (std::size_t m = 0; m <= n; ++m) {
            Rational s = stirling_first(n, m);
            c[m] = (n - m) % 2 == 0 ? s : Rational(-s);
        }
        return Poly(std::move(c));
    };
    return ShefferFamily("rising", FamilyKind::rising, detail::unit_series(),
                         [](std::size_t order) { return series::neg_log1m(order); }, closed);
}

// Exponential (Bell/Touchard) polynomials: kinv = e^t - 1
inline ShefferFamily exponential()
{
    auto closed = [](std::size_t n) {
        std::vector<Rational> c(n + 1);
        for (std::size_t m = 0; m <= n; ++m) c[m] = stirling_second(n, m);
        return Poly(std::move(c));
    };
    return ShefferFamily("bell", FamilyKind::exponential, detail::unit_series(),
                         [](std::size_t order) { return series::expm1(order); }, closed);
}

/// Associated Laguerre polynomials Sheffer to ((1-t)^{-beta-1}, t/(t-1)).
///
/// Normalized by sum_m L_m(x) t^m/m! = (1-t)^{-beta-1} e^{xt/(t-1)}, which
/// is m! times the classical L_m^(beta).
inline ShefferFamily laguerre(const Rational& beta)
{
    auto g = [beta](std::size_t order) { return series::one_minus_t_pow_neg(beta + 1, order); };
    auto closed = [beta](std::size_t n) {
        // n! L_n^(beta)(x) = sum_k C(n+beta, n-k) n!/k! (-x)^k
        std::vector<Rational> c(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            Rational binom = pochhammer_falling(Rational(n) + beta, n - k) / factorial(n - k);
            Rational term = binom * factorial(n) / factorial(k);
            c[k] = k % 2 == 0 ? term : Rational(-term);
        }
        return Poly(std::move(c));
    };
    return ShefferFamily("laguerre", FamilyKind::laguerre, g, [](std::size_t order) { return series::t_over_t_minus_1(order); },
                         closed, beta);
}

/// Generic Sheffer family from (g, k); kinv is computed by series inversion.
inline ShefferFamily generic(SeriesSource g, SeriesSource k, std::string name = "generic")
{
    auto kinv = [k = std::move(k)](std::size_t order) { return compositional_inverse(k(order)); };
    return ShefferFamily(std::move(name), FamilyKind::generic, std::move(g), kinv);
}

// Every built-in, with the Laguerre parameter fixed by the caller.
inline std::vector<ShefferFamily> builtins(const Rational& laguerre_beta = 0)
{
    return {monomial(), bernoulli(), euler(), hermite(), falling(), rising(), exponential(), laguerre(laguerre_beta)};
}

} // namespace families

} // namespace fracleibniz

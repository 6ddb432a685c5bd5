#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exactnum.hpp"
#include "polynomial.hpp"

namespace fracleibniz {

/// Truncated formal power series in t: coefficients of t^0 .. t^K.
///
/// The truncation order K travels with every value. Binary operations take
/// the minimum order of their operands, so no result ever claims accuracy
/// beyond what its inputs justify.
template <typename R>
class truncated_series {
public:
    using coefficient_type = R;

    truncated_series() : coeffs_(1, R(0)) {}

    // Zero series of order K.
    explicit truncated_series(std::size_t order) : coeffs_(order + 1, R(0)) {}

    // Takes the first K+1 coefficients; missing ones are zero.
    truncated_series(std::vector<R> coeffs, std::size_t order) : coeffs_(std::move(coeffs))
    {
        coeffs_.resize(order + 1, R(0));
    }

    static truncated_series from_generator(std::size_t order, const std::function<R(std::size_t)>& coeff)
    {
        std::vector<R> c(order + 1);
        for (std::size_t n = 0; n <= order; ++n) c[n] = coeff(n);
        return truncated_series(std::move(c), order);
    }

    // The series t, truncated at K.
    static truncated_series identity(std::size_t order)
    {
        truncated_series s(order);
        if (order >= 1) s.coeffs_[1] = R(1);
        return s;
    }

    static truncated_series constant(R c, std::size_t order)
    {
        truncated_series s(order);
        s.coeffs_[0] = std::move(c);
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    const std::vector<R>& coefficients() const { return coeffs_; }

    // [t^n] s. Throws truncation_error when n lies beyond the truncation order.
    const R& coefficient(std::size_t n) const
    {
        if (n > order())
            throw truncation_error("coefficient t^" + std::to_string(n) + " requested from a series truncated at order "
                                   + std::to_string(order()));
        return coeffs_[n];
    }

    const R& operator[](std::size_t n) const { return coefficient(n); }

    // Index of the first nonzero coefficient; order()+1 if every stored one vanishes.
    std::size_t valuation() const
    {
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            if (!(coeffs_[n] == R(0))) return n;
        return coeffs_.size();
    }

    truncated_series truncate(std::size_t order) const
    {
        if (order > this->order())
            throw truncation_error("cannot extend a series of order " + std::to_string(this->order()) + " to "
                                   + std::to_string(order));
        return truncated_series(std::vector<R>(coeffs_.begin(), coeffs_.begin() + order + 1), order);
    }

    friend truncated_series operator+(const truncated_series& lhs, const truncated_series& rhs)
    {
        std::size_t k = std::min(lhs.order(), rhs.order());
        truncated_series out(k);
        for (std::size_t n = 0; n <= k; ++n) out.coeffs_[n] = lhs.coeffs_[n] + rhs.coeffs_[n];
        return out;
    }

    friend truncated_series operator-(const truncated_series& lhs, const truncated_series& rhs)
    {
        std::size_t k = std::min(lhs.order(), rhs.order());
        truncated_series out(k);
        for (std::size_t n = 0; n <= k; ++n) out.coeffs_[n] = lhs.coeffs_[n] - rhs.coeffs_[n];
        return out;
    }

    friend truncated_series operator-(truncated_series s)
    {
        for (auto& c : s.coeffs_) c = -c;
        return s;
    }

    friend truncated_series operator*(const truncated_series& lhs, const truncated_series& rhs)
    {
        std::size_t k = std::min(lhs.order(), rhs.order());
        truncated_series out(k);
        for (std::size_t i = 0; i <= k; ++i) {
            if (lhs.coeffs_[i] == R(0)) continue;
            for (std::size_t j = 0; i + j <= k; ++j) out.coeffs_[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
        return out;
    }

    friend truncated_series operator*(truncated_series s, const Rational& c)
    {
        for (auto& coeff : s.coeffs_) coeff = coeff * c;
        return s;
    }

    friend bool operator==(const truncated_series& lhs, const truncated_series& rhs)
    {
        return lhs.coeffs_ == rhs.coeffs_;
    }

    // Formal derivative d/dt; the order drops by one (an order-0 series maps to zero of order 0).
    friend truncated_series derivative(const truncated_series& s)
    {
        if (s.order() == 0) return truncated_series(0);
        truncated_series out(s.order() - 1);
        for (std::size_t n = 1; n <= s.order(); ++n) out.coeffs_[n - 1] = s.coeffs_[n] * Rational(n);
        return out;
    }

private:
    std::vector<R> coeffs_;
};

using PowerSeries = truncated_series<Rational>;

// Multiplicative inverse; requires an invertible constant term.
inline PowerSeries reciprocal(const PowerSeries& s)
{
    const Rational& c0 = s.coefficient(0);
    if (c0 == 0) throw series_order_error("reciprocal of a series with zero constant term");
    const std::size_t k = s.order();
    std::vector<Rational> out(k + 1);
    out[0] = 1 / c0;
    for (std::size_t n = 1; n <= k; ++n) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= n; ++i) acc += s.coefficient(i) * out[n - i];
        out[n] = -acc / c0;
    }
    return PowerSeries(std::move(out), k);
}

// s^e for a nonnegative integer exponent, truncated at s's order.
template <typename R>
truncated_series<R> power(const truncated_series<R>& s, std::size_t e)
{
    truncated_series<R> acc = truncated_series<R>::constant(R(1), s.order());
    for (std::size_t i = 0; i < e; ++i) acc = acc * s;
    return acc;
}

// Helpers to lift a rational series into a series over another coefficient ring.
template <typename R>
std::vector<R> convert(const PowerSeries& s)
{
    std::vector<R> out;
    out.reserve(s.order() + 1);
    for (const auto& c : s.coefficients()) out.push_back(R(c));
    return out;
}

/// outer(inner(t)), truncated at the smaller of the two orders.
///
/// The inner series must have zero constant term, otherwise every output
/// coefficient would depend on all of outer's (unknown) tail.
template <typename R>
truncated_series<R> compose(const truncated_series<R>& outer, const PowerSeries& inner)
{
    if (inner.coefficient(0) != 0) throw series_order_error("composition requires an inner series with zero constant term");
    const std::size_t k = std::min(outer.order(), inner.order());
    // Horner in the inner series: c0 + inner*(c1 + inner*(c2 + ...)).
    truncated_series<R> acc(k);
    PowerSeries in = inner.truncate(k);
    for (std::size_t n = k + 1; n-- > 0;) {
        truncated_series<R> next = acc * truncated_series<R>(convert<R>(in), k);
        std::vector<R> c = next.coefficients();
        c[0] += outer.coefficient(n);
        acc = truncated_series<R>(std::move(c), k);
    }
    return acc;
}

/// Compositional inverse k^{-1} with k(k^{-1}(t)) = t up to truncation.
///
/// Solved coefficient by coefficient: having fixed b_1..b_{n-1}, the t^n
/// coefficient of k(b(t)) is k_1 b_n + (terms in earlier b's), so b_n is
/// obtained by a single division.
inline PowerSeries compositional_inverse(const PowerSeries& k)
{
    if (k.coefficient(0) != 0 || k.order() < 1 || k.coefficient(1) == 0)
        throw series_order_error("compositional inverse requires O(k) = 1 (zero constant, nonzero linear term)");
    const std::size_t order = k.order();
    const Rational k1 = k.coefficient(1);
    std::vector<Rational> b(order + 1, Rational(0));
    b[1] = 1 / k1;
    for (std::size_t n = 2; n <= order; ++n) {
        PowerSeries current(b, order);
        PowerSeries composed = compose(k, current);
        // b_n is still zero here, so composed[n] is exactly the contribution of the earlier coefficients.
        b[n] = -composed.coefficient(n) / k1;
    }
    return PowerSeries(std::move(b), order);
}

inline PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) { return compose(outer, inner); }

inline PowerSeries series_compositional_inverse(const PowerSeries& k) { return compositional_inverse(k); }

inline Rational series_coefficient(const PowerSeries& s, std::size_t n) { return s.coefficient(n); }

// exp(s) for a series with zero constant term: sum_j s^j / j!.
template <typename R>
truncated_series<R> exp_series(const truncated_series<R>& s)
{
    if (!(s.coefficient(0) == R(0))) throw series_order_error("exp_series requires a zero constant term");
    const std::size_t k = s.order();
    truncated_series<R> acc = truncated_series<R>::constant(R(1), k);
    truncated_series<R> term = acc;
    for (std::size_t j = 1; j <= k; ++j) {
        term = term * s * (Rational(1) / j);
        acc = acc + term;
    }
    return acc;
}

// Named series used by the built-in families and the tests.
namespace series {

inline PowerSeries exp(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t n) { return 1 / factorial(n); });
}

// e^t - 1
inline PowerSeries expm1(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t n) { return n == 0 ? Rational(0) : 1 / factorial(n); });
}

// ln(1 + t) = t - t^2/2 + t^3/3 - ...
inline PowerSeries log1p(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t n) {
        if (n == 0) return Rational(0);
        return Rational(n % 2 == 1 ? 1 : -1, static_cast<long>(n));
    });
}

// -ln(1 - t) = t + t^2/2 + t^3/3 + ...
inline PowerSeries neg_log1m(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t n) { return n == 0 ? Rational(0) : Rational(1, static_cast<long>(n)); });
}

// 1/(1 - t)
inline PowerSeries geometric(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t) { return Rational(1); });
}

// t/(t - 1) = -t - t^2 - t^3 - ...
inline PowerSeries t_over_t_minus_1(std::size_t order)
{
    return PowerSeries::from_generator(order, [](std::size_t n) { return n == 0 ? Rational(0) : Rational(-1); });
}

// (1 - t)^{-e} = sum_n (e)^{(n)} t^n / n! with the rising product.
inline PowerSeries one_minus_t_pow_neg(const Rational& e, std::size_t order)
{
    return PowerSeries::from_generator(order, [&](std::size_t n) { return pochhammer_rising(e, n) / factorial(n); });
}

} // namespace series

} // namespace fracleibniz

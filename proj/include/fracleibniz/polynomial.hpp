#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "exactnum.hpp"

namespace fracleibniz {

/// Dense univariate polynomial with coefficients in a commutative ring R.
///
/// Coefficients are indexed by degree and trailing zeros are always trimmed,
/// so the zero polynomial is the empty coefficient list and two equal
/// polynomials have identical storage.
template <typename R>
class polynomial {
public:
    using coefficient_type = R;

    polynomial() = default;

    explicit polynomial(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    polynomial(std::initializer_list<R> coeffs) : coeffs_(coeffs) { trim(); }

    // Constant polynomial; explicit so that R(0) in generic code means "zero".
    explicit polynomial(const Rational& c) : coeffs_{R(c)} { trim(); }

    static polynomial constant(R c) { return polynomial(std::vector<R>{std::move(c)}); }

    // c x^k
    static polynomial monomial(std::size_t k, R c = R(1))
    {
        std::vector<R> coeffs(k + 1, R(0));
        coeffs[k] = std::move(c);
        return polynomial(std::move(coeffs));
    }

    static polynomial x() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }

    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    std::size_t size() const { return coeffs_.size(); }

    const std::vector<R>& coefficients() const { return coeffs_; }

    R coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : R(0); }

    const R& leading() const { return coeffs_.back(); }

    polynomial& operator+=(const polynomial& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), R(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        trim();
        return *this;
    }

    polynomial& operator-=(const polynomial& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), R(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
        trim();
        return *this;
    }

    polynomial& operator*=(const polynomial& rhs)
    {
        *this = *this * rhs;
        return *this;
    }

    friend polynomial operator+(polynomial lhs, const polynomial& rhs) { return lhs += rhs; }
    friend polynomial operator-(polynomial lhs, const polynomial& rhs) { return lhs -= rhs; }

    friend polynomial operator-(polynomial p)
    {
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    friend polynomial operator*(const polynomial& lhs, const polynomial& rhs)
    {
        if (lhs.is_zero() || rhs.is_zero()) return {};
        std::vector<R> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, R(0));
        for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
            if (lhs.coeffs_[i] == R(0)) continue;
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
        return polynomial(std::move(out));
    }

    friend polynomial operator*(polynomial p, const Rational& c) { return scale(std::move(p), c); }
    friend polynomial operator*(const Rational& c, polynomial p) { return scale(std::move(p), c); }

    // Scalar action by a Rational (R is either Rational or a polynomial over it).
    friend polynomial scale(polynomial p, const Rational& c)
    {
        for (auto& coeff : p.coeffs_) coeff = coeff * c;
        p.trim();
        return p;
    }

    friend polynomial scale_ring(polynomial p, const R& c)
    {
        for (auto& coeff : p.coeffs_) coeff = coeff * c;
        p.trim();
        return p;
    }

    // Multiplication by x^k.
    friend polynomial shift(const polynomial& p, std::size_t k)
    {
        if (p.is_zero()) return {};
        std::vector<R> out(k, R(0));
        out.insert(out.end(), p.coeffs_.begin(), p.coeffs_.end());
        return polynomial(std::move(out));
    }

    friend bool operator==(const polynomial& lhs, const polynomial& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

    // Horner evaluation; T must accept R * T and T + R.
    template <typename T>
    T operator()(const T& at) const
    {
        T acc = T(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == R(0)) coeffs_.pop_back();
    }

    std::vector<R> coeffs_;
};

using Poly = polynomial<Rational>;

inline Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
inline Poly poly_sub(const Poly& p, const Poly& q) { return p - q; }
inline Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly poly_scale(const Poly& p, const Rational& c) { return scale(p, c); }

// m-th ordinary derivative; zero once m exceeds the degree.
template <typename R>
polynomial<R> derivative(const polynomial<R>& p, std::size_t m = 1)
{
    if (m == 0) return p;
    if (static_cast<long>(m) > p.degree()) return {};
    std::vector<R> out(p.size() - m, R(0));
    for (std::size_t k = m; k < p.size(); ++k) {
        Rational falling = pochhammer_falling(Rational(k), m);
        out[k - m] = p.coefficient(k) * falling;
    }
    return polynomial<R>(std::move(out));
}

inline Poly poly_derivative(const Poly& p, std::size_t m) { return derivative(p, m); }

// Expands prod_{i=0}^{n-1} (x + step*i), i.e. the falling (step = -1) or
// rising (step = +1) factorial polynomial.
inline Poly factorial_polynomial(std::size_t n, int step)
{
    Poly acc = Poly::constant(1);
    for (std::size_t i = 0; i < n; ++i) acc = acc * Poly{Rational(step * static_cast<long>(i)), Rational(1)};
    return acc;
}

// Human-readable form used by the CLI text renderer and in test diagnostics,
// highest degree first: "x^2 − x", "(3/2)·x^2 + 1".
inline std::string to_string(const Poly& p, const std::string& var = "x")
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (long k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coefficients()[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out += "−";
        } else {
            out += c < 0 ? " − " : " + ";
        }
        first = false;
        std::string power = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        std::string coeff = is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")";
        if (k == 0) {
            out += coeff;
        } else if (mag == 1) {
            out += power;
        } else {
            out += coeff + "·" + power;
        }
    }
    return out;
}

} // namespace fracleibniz

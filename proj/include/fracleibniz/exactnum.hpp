#pragma once

// Exact scalars and the combinatorial number generators used by every
// product rule: binomials, falling/rising Pochhammer products and both kinds
// of Stirling numbers.

#include <atomic>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

namespace fracleibniz {

// GMP-backed rational; always canonical (reduced, positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline bool is_nonneg_integer(const Rational& r) { return is_integer(r) && r >= 0; }

inline bool is_positive_integer(const Rational& r) { return is_integer(r) && r > 0; }

inline bool is_nonpositive_integer(const Rational& r) { return is_integer(r) && r <= 0; }

inline bool is_negative_integer(const Rational& r) { return is_integer(r) && r < 0; }

// Renders "p" or "p/q" with the sign on the numerator.
inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "[-]p" or "[-]p/q" (surrounding whitespace allowed). Throws parse_error.
inline Rational parse_rational(std::string_view text)
{
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto digits = [&](const char* what) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw parse_error(std::string("expected ") + what, pos);
        return BigInt(std::string(text.substr(start, pos - start)));
    };

    skip_ws();
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    BigInt num = digits("integer numerator");
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = digits("denominator");
        if (den == 0) throw parse_error("zero denominator", pos - 1);
    }
    skip_ws();
    if (pos != text.size()) throw parse_error("unexpected trailing characters in rational", pos);
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

// C(n, m) for nonnegative integers; zero when m > n.
inline Rational binomial(std::uint64_t n, std::uint64_t m)
{
    if (m > n) return Rational(0);
    if (m > n - m) m = n - m;
    BigInt acc = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        acc *= n - i;
        acc /= i + 1; // exact: acc is C(n, i+1) after the division
    }
    return Rational(acc);
}

// a(a-1)...(a-m+1). This is the (a)_m appearing in every product rule weight.
inline Rational pochhammer_falling(const Rational& a, std::uint64_t m)
{
    Rational acc = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        acc *= a - i;
        if (acc == 0) break;
    }
    return acc;
}

// q(q+1)...(q+k-1).
inline Rational pochhammer_rising(const Rational& q, std::uint64_t k)
{
    Rational acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        acc *= q + i;
        if (acc == 0) break;
    }
    return acc;
}

inline Rational factorial(std::uint64_t n)
{
    BigInt acc = 1;
    for (std::uint64_t i = 2; i <= n; ++i) acc *= i;
    return Rational(acc);
}

namespace detail {

// Lower-triangular table grown on demand; rows are filled by a recurrence
// that only ever reads the previous row.
class stirling_table {
public:
    using recurrence = BigInt (*)(const std::vector<BigInt>& prev, std::size_t n, std::size_t k);

    explicit stirling_table(recurrence step) : step_(step) { rows_.push_back({BigInt(1)}); }

    BigInt get(std::size_t n, std::size_t k)
    {
        if (k > n) return BigInt(0);
        std::lock_guard<std::mutex> lock(mutex_);
        while (rows_.size() <= n) {
            const std::size_t row = rows_.size();
            std::vector<BigInt> next(row + 1);
            for (std::size_t j = 0; j <= row; ++j) next[j] = step_(rows_.back(), row - 1, j);
            rows_.push_back(std::move(next));
        }
        return rows_[n][k];
    }

private:
    recurrence step_;
    std::mutex mutex_;
    std::vector<std::vector<BigInt>> rows_;
};

inline BigInt prev_at(const std::vector<BigInt>& prev, std::size_t k)
{
    return k < prev.size() ? prev[k] : BigInt(0);
}

// s(n+1, k) = s(n, k-1) - n s(n, k)
inline BigInt stirling1_step(const std::vector<BigInt>& prev, std::size_t n, std::size_t k)
{
    BigInt left = k == 0 ? BigInt(0) : prev_at(prev, k - 1);
    return left - BigInt(n) * prev_at(prev, k);
}

// S(n+1, k) = k S(n, k) + S(n, k-1)
inline BigInt stirling2_step(const std::vector<BigInt>& prev, std::size_t n, std::size_t k)
{
    (void)n;
    BigInt left = k == 0 ? BigInt(0) : prev_at(prev, k - 1);
    return BigInt(k) * prev_at(prev, k) + left;
}

inline stirling_table& stirling1_cache()
{
    static stirling_table table(&stirling1_step);
    return table;
}

inline stirling_table& stirling2_cache()
{
    static stirling_table table(&stirling2_step);
    return table;
}

inline std::atomic<bool>& stirling1_fault_flag()
{
    static std::atomic<bool> flag{false};
    return flag;
}

} // namespace detail

// Testing aid: flips the sign of S1(3, 1) on lookup so verification sweeps can
// demonstrate that a corrupted table is caught. Never enabled in normal use.
inline void set_stirling1_sign_fault(bool enabled) { detail::stirling1_fault_flag() = enabled; }

inline bool stirling1_sign_fault_enabled() { return detail::stirling1_fault_flag(); }

// Signed Stirling numbers of the first kind: (x)_n = sum_m S1(n, m) x^m.
inline Rational stirling_first(std::uint64_t n, std::uint64_t m)
{
    Rational value(detail::stirling1_cache().get(n, m));
    if (n == 3 && m == 1 && stirling1_sign_fault_enabled()) value = -value;
    return value;
}

inline Rational stirling_second(std::uint64_t n, std::uint64_t m)
{
    return Rational(detail::stirling2_cache().get(n, m));
}

} // namespace fracleibniz

#pragma once

// Closed-form tables for the m-th derivative of f(ln x), f(e^x), f(1/x) and
// f(ln ln ... ln x).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "exactnum.hpp"

namespace fracleibniz {

enum class LemmaVariant { ln, exp, recip };

inline std::string to_string(LemmaVariant v)
{
    switch (v) {
    case LemmaVariant::ln: return "ln";
    case LemmaVariant::exp: return "exp";
    case LemmaVariant::recip: return "recip";
    }
    return "?";
}

/// coefficient * f^(derivative)(inner) * base^exponent, where inner and base are
/// (ln x, x) for ln, (e^x, e^x) for exp, and (1/x, x) for recip.
struct LemmaTerm {
    std::size_t derivative = 0;
    Rational coefficient;
    long exponent = 0;

    friend bool operator==(const LemmaTerm&, const LemmaTerm&) = default;
};

/// D^m f(inner(x)) as a table of terms; m = 0 is the identity {(0, 1, 0)}.
///
///   ln:    sum_v S1(m,v) f^(v)(ln x) x^(-m)
///   exp:   sum_v S2(m,v) f^(v)(e^x) e^(v x)
///   recip: sum_{k=1}^{m} C(m-1,k-1) m!/k! (-1)^m x^(-(m+k)) f^(k)(1/x)
inline std::vector<LemmaTerm> lemma_derivative_table(LemmaVariant variant, std::size_t m)
{
    if (m == 0) return {{0, Rational(1), 0}};
    std::vector<LemmaTerm> out;
    const long mm = static_cast<long>(m);
    switch (variant) {
    case LemmaVariant::ln:
        for (std::size_t v = 0; v <= m; ++v) {
            Rational c = stirling_first(m, v);
            if (c != 0) out.push_back({v, c, -mm});
        }
        break;
    case LemmaVariant::exp:
        for (std::size_t v = 0; v <= m; ++v) {
            Rational c = stirling_second(m, v);
            if (c != 0) out.push_back({v, c, static_cast<long>(v)});
        }
        break;
    case LemmaVariant::recip:
        for (std::size_t k = 1; k <= m; ++k) {
            Rational c = binomial(m - 1, k - 1) * factorial(m) / factorial(k);
            if (m % 2 == 1) c = -c;
            out.push_back({k, c, -(mm + static_cast<long>(k))});
        }
        break;
    }
    return out;
}

/// Chain table for D^m f(ln^[eps] x).
///
/// Key (a_1, ..., a_eps) with m >= a_1 >= ... >= a_eps >= 1 carries the
/// coefficient S1(m,a_1) S1(a_1,a_2) ... S1(a_{eps-1},a_eps); the term is
///     coeff * f^(a_eps)(ln^[eps] x) / (x^m (ln x)^a_1 ... (ln^[eps-1] x)^a_{eps-1}).
/// For m = 0 the table is the single all-zero chain with coefficient 1.
using ChainTable = std::map<std::vector<std::size_t>, Rational>;

inline ChainTable iterated_ln_derivative(std::size_t epsilon, std::size_t m)
{
    if (epsilon == 0) throw std::invalid_argument("iterated_ln_derivative requires epsilon >= 1");
    ChainTable out;
    if (m == 0) {
        out.emplace(std::vector<std::size_t>(epsilon, 0), Rational(1));
        return out;
    }
    std::vector<std::size_t> chain(epsilon);
    // Depth-first over nonincreasing chains; S1(k, 0) = 0 for k >= 1 keeps every a_i >= 1.
    auto walk = [&](auto&& self, std::size_t depth, std::size_t prev, const Rational& acc) -> void {
        if (depth == epsilon) {
            out.emplace(chain, acc);
            return;
        }
        for (std::size_t a = 1; a <= prev; ++a) {
            Rational s = stirling_first(prev, a);
            if (s == 0) continue;
            chain[depth] = a;
            self(self, depth + 1, a, acc * s);
        }
    };
    walk(walk, 0, m, Rational(1));
    return out;
}

} // namespace fracleibniz

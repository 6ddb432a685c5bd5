#pragma once

// Reference Riemann–Liouville power rule, coded separately from fraccalc:
// D^a x^k = Gamma(k+1)/Gamma(k+1-a) x^(k-a), with Gamma(k+1-a)/Gamma(1-a)
// accumulated by walking the recurrence Gamma(z+1) = z Gamma(z) downward.

#include <cstddef>

#include "../errors.hpp"
#include "../exactnum.hpp"
#include "../fracpoly.hpp"
#include "../polynomial.hpp"

namespace fracleibniz::oracle {

inline FracPoly rl_oracle_naive(const Poly& p, const Rational& a)
{
    if (a == 0) return FracPoly::from_poly(p);
    if (denominator(a) == 1 && a > 0) throw integer_order_error("oracle: positive integer order");

    FracPoly::term_map terms;
    for (std::size_t k = 0; k < p.size(); ++k) {
        Rational pk = p.coefficient(k);
        if (pk == 0) continue;
        BigInt k_factorial = 1;
        for (std::size_t i = 2; i <= k; ++i) k_factorial *= i;
        // Gamma(k+1-a) = (k-a)(k-1-a)...(1-a) Gamma(1-a)
        Rational ratio = 1;
        for (std::size_t j = k; j >= 1; --j) ratio *= Rational(j) - a;
        if (ratio == 0) throw pole_error("oracle: Gamma pole");
        terms[k] = pk * Rational(k_factorial) / ratio;
    }
    return FracPoly(a, GammaBase::one_minus_a, std::move(terms));
}

} // namespace fracleibniz::oracle

#pragma once

// High-precision evaluation of canonical results for display. Gamma is
// evaluated by MPFR, which rounds correctly at the working precision; the
// working precision carries generous guard bits over the requested digits.

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmp.h>
#include <mpfr.h>

#include "errors.hpp"
#include "exactnum.hpp"
#include "fracpoly.hpp"
#include "hypergeometric.hpp"

namespace fracleibniz {

// Minimal RAII holder for an mpfr_t at a fixed precision.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(value_, bits); mpfr_set_zero(value_, 1); }

    BigFloat(const Rational& r, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_q(value_, r.backend().data(), MPFR_RNDN); }

    BigFloat(const BigFloat& other) : BigFloat(mpfr_get_prec(other.value_)) { mpfr_set(value_, other.value_, MPFR_RNDN); }

    BigFloat& operator=(const BigFloat& other)
    {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }

    ~BigFloat() { mpfr_clear(value_); }

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    // Scientific notation with the given number of significant digits.
    std::string str(std::size_t digits) const
    {
        if (mpfr_zero_p(value_)) return "0";
        char* raw = nullptr;
        std::string fmt = "%." + std::to_string(digits > 0 ? digits - 1 : 0) + "Re";
        if (mpfr_asprintf(&raw, fmt.c_str(), value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
        std::string out(raw);
        mpfr_free_str(raw);
        return out;
    }

    // Fixed notation with the given number of significant digits, e.g. 1.50450555612735.
    std::string fixed(std::size_t digits) const
    {
        if (mpfr_zero_p(value_)) return "0";
        // decimal exponent of the leading digit
        long dec = static_cast<long>(std::floor(std::log10(std::fabs(mpfr_get_d(value_, MPFR_RNDN)))));
        long decimals = static_cast<long>(digits) - 1 - dec;
        if (decimals < 0) decimals = 0;
        char* raw = nullptr;
        std::string fmt = "%." + std::to_string(decimals) + "Rf";
        if (mpfr_asprintf(&raw, fmt.c_str(), value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
        std::string out(raw);
        mpfr_free_str(raw);
        return out;
    }

private:
    mpfr_t value_;
};

inline mpfr_prec_t working_bits(std::size_t digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 64;
}

inline BigFloat gamma_of(const Rational& z, mpfr_prec_t bits)
{
    BigFloat v(z, bits);
    BigFloat out(bits);
    mpfr_gamma(out.get(), v.get(), MPFR_RNDN);
    return out;
}

/// Numeric value of a canonical result at x > 0, to at least `digits` digits.
inline BigFloat fracpoly_eval_numeric(const FracPoly& u, const Rational& x, std::size_t digits)
{
    if (x <= 0) throw std::domain_error("numeric evaluation requires x > 0 (real branch of x^(k-a))");
    if (digits == 0) throw std::invalid_argument("digits must be positive");
    const mpfr_prec_t bits = working_bits(digits);
    BigFloat xv(x, bits);
    BigFloat sum(bits);
    BigFloat term(bits);
    for (const auto& [k, c] : u.terms()) {
        BigFloat e(u.exponent(k), bits);
        mpfr_pow(term.get(), xv.get(), e.get(), MPFR_RNDN);
        BigFloat cv(c, bits);
        mpfr_mul(term.get(), term.get(), cv.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    if (u.base() == GammaBase::none) return sum;
    Rational gamma_arg = u.base() == GammaBase::one_minus_a ? Rational(1 - u.order()) : Rational(1 + u.order());
    BigFloat g = gamma_of(gamma_arg, bits);
    mpfr_div(sum.get(), sum.get(), g.get(), MPFR_RNDN);
    return sum;
}

// Value of a truncated 0F1-side series (1/Gamma(1+a)) * sum_j c_j x^j.
inline BigFloat hypseries_eval_numeric(const HypSeries& s, const Rational& x, std::size_t digits)
{
    const mpfr_prec_t bits = working_bits(digits);
    BigFloat sum(Rational(s.coefficients(x)), bits);
    BigFloat g = gamma_of(1 + s.order, bits);
    mpfr_div(sum.get(), sum.get(), g.get(), MPFR_RNDN);
    return sum;
}

} // namespace fracleibniz

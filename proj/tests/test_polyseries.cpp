#include <gtest/gtest.h>

#include "fracleibniz/cli/random.hpp"
#include "fracleibniz/errors.hpp"
#include "fracleibniz/polynomial.hpp"
#include "fracleibniz/series.hpp"

using namespace fracleibniz;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

PowerSeries ps(std::initializer_list<Rational> c, std::size_t order) { return PowerSeries(std::vector<Rational>(c), order); }

} // namespace

TEST(Poly, Canonical)
{
    Poly p{q(1), q(0), q(0)};
    EXPECT_EQ(p.degree(), 0);
    EXPECT_TRUE(Poly{q(0)}.is_zero());
    EXPECT_EQ(Poly().degree(), -1);
    EXPECT_EQ(Poly().coefficients().size(), 0u);
}

TEST(Poly, ArithmeticExamples)
{
    Poly xp1{q(1), q(1)}, xm1{q(-1), q(1)};
    EXPECT_EQ(poly_mul(xp1, xm1), (Poly{q(-1), q(0), q(1)}));
    EXPECT_EQ(poly_add(xp1, Poly()), xp1);
    EXPECT_EQ(poly_scale(Poly::monomial(2), q(3, 2)), Poly::monomial(2, q(3, 2)));
    EXPECT_TRUE(poly_sub(xp1, xp1).is_zero());
}

TEST(Poly, DerivativeExamples)
{
    EXPECT_EQ(poly_derivative(Poly::monomial(3), 1), Poly::monomial(2, q(3)));
    EXPECT_TRUE(poly_derivative(Poly::monomial(3), 4).is_zero());
    EXPECT_EQ(poly_derivative(Poly{q(0), q(1), q(1)}, 2), Poly::constant(q(2)));
    EXPECT_EQ(poly_derivative(Poly{q(5)}, 0), Poly{q(5)});
}

TEST(Poly, Evaluation)
{
    Poly p{q(1), q(-3), q(2)}; // 2x^2 - 3x + 1
    EXPECT_EQ(p(q(1, 2)), q(0));
    EXPECT_EQ(p(q(3)), q(10));
}

TEST(Poly, TextRendering)
{
    EXPECT_EQ(to_string(Poly{q(0), q(-1), q(1)}), "x^2 − x");
    EXPECT_EQ(to_string(Poly{q(1), q(0), q(3, 2)}), "(3/2)·x^2 + 1");
    EXPECT_EQ(to_string(Poly()), "0");
    EXPECT_EQ(to_string(Poly{q(-2)}), "−2");
}

TEST(Poly, FactorialPolynomials)
{
    EXPECT_EQ(factorial_polynomial(3, -1), (Poly{q(0), q(2), q(-3), q(1)}));
    EXPECT_EQ(factorial_polynomial(3, 1), (Poly{q(0), q(2), q(3), q(1)}));
    EXPECT_EQ(factorial_polynomial(0, 1), Poly::constant(q(1)));
}

TEST(PolyProperty, ProductRule)
{
    cli::Rng rng(77);
    for (int i = 0; i < 50; ++i) {
        Poly p = rng.poly(rng.below(7)), r = rng.poly(rng.below(7));
        EXPECT_EQ(poly_derivative(poly_mul(p, r), 1), derivative(p, 1) * r + p * derivative(r, 1));
    }
}

TEST(PolyProperty, RingAxioms)
{
    cli::Rng rng(78);
    for (int i = 0; i < 30; ++i) {
        Poly a = rng.poly(rng.below(5)), b = rng.poly(rng.below(5)), c = rng.poly(rng.below(5));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, Poly());
    }
}

TEST(Series, CoefficientAccess)
{
    EXPECT_EQ(series_coefficient(series::exp(6), 3), q(1, 6));
    EXPECT_EQ(series_coefficient(ps({q(7), q(1)}, 3), 0), q(7));
    EXPECT_EQ(series_coefficient(series::log1p(6), 4), q(-1, 4));
    EXPECT_THROW(series_coefficient(series::exp(3), 4), truncation_error);
}

TEST(Series, MixedOrdersUseMinimum)
{
    PowerSeries a = series::exp(5), b = series::geometric(3);
    EXPECT_EQ((a + b).order(), 3u);
    EXPECT_EQ((a * b).order(), 3u);
    EXPECT_THROW(b.truncate(4), truncation_error);
}

TEST(Series, ComposeExamples)
{
    // e^{ln(1+t)} = 1 + t
    PowerSeries r = series_compose(series::exp(6), series::log1p(6));
    EXPECT_EQ(r, ps({q(1), q(1)}, 6));
    // outer(t) = outer
    PowerSeries outer = ps({q(2), q(-1, 3), q(5), q(0), q(7, 2)}, 4);
    EXPECT_EQ(series_compose(outer, PowerSeries::identity(4)), outer);
    // 1/(1-t) at t/(t-1) is 1 - t
    EXPECT_EQ(series_compose(series::geometric(6), series::t_over_t_minus_1(6)), ps({q(1), q(-1)}, 6));
}

TEST(Series, ComposeRejectsConstantInner)
{
    EXPECT_THROW(series_compose(series::exp(4), series::exp(4)), series_order_error);
}

TEST(Series, InverseExamples)
{
    EXPECT_EQ(series_compositional_inverse(series::expm1(8)), series::log1p(8));
    EXPECT_EQ(series_compositional_inverse(PowerSeries::identity(8)), PowerSeries::identity(8));
    EXPECT_EQ(series_compositional_inverse(series::t_over_t_minus_1(8)), series::t_over_t_minus_1(8));
}

TEST(Series, InverseRejectsBadOrder)
{
    EXPECT_THROW(series_compositional_inverse(ps({q(0), q(0), q(1)}, 4)), series_order_error);
    EXPECT_THROW(series_compositional_inverse(ps({q(1), q(1)}, 4)), series_order_error);
}

TEST(Series, ReciprocalAndPower)
{
    PowerSeries g = series::geometric(7);
    EXPECT_EQ(reciprocal(g), ps({q(1), q(-1)}, 7));
    EXPECT_EQ(power(ps({q(1), q(1)}, 5), 3), ps({q(1), q(3), q(3), q(1)}, 5));
    EXPECT_THROW(reciprocal(PowerSeries::identity(3)), std::exception);
}

TEST(Series, FormalDerivativeDropsOrder)
{
    PowerSeries d = derivative(series::exp(6));
    EXPECT_EQ(d.order(), 5u);
    EXPECT_EQ(d, series::exp(5));
}

TEST(Series, BinomialPowerSeries)
{
    // (1-t)^{-2} = sum (n+1) t^n
    PowerSeries s = series::one_minus_t_pow_neg(q(2), 6);
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(s.coefficient(n), q(static_cast<long>(n) + 1));
}

TEST(SeriesProperty, RandomInversionsRoundTrip)
{
    cli::Rng rng(2024);
    const std::size_t K = 10;
    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> c(K + 1, q(0));
        c[1] = rng.rational(true);
        for (std::size_t n = 2; n <= K; ++n) c[n] = rng.rational();
        PowerSeries k(c, K);
        PowerSeries inv = series_compositional_inverse(k);
        EXPECT_EQ(series_compose(k, inv), PowerSeries::identity(K)) << "instance " << i;
        EXPECT_EQ(series_compose(inv, k), PowerSeries::identity(K)) << "instance " << i;
    }
}

TEST(SeriesProperty, ExpOfLogIsIdentity)
{
    cli::Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        std::vector<Rational> c(9, q(0));
        for (std::size_t n = 1; n <= 8; ++n) c[n] = rng.rational();
        PowerSeries s(c, 8);
        // exp(s) * exp(-s) = 1
        EXPECT_EQ(exp_series(s) * exp_series(-s), PowerSeries::constant(q(1), 8));
    }
}

TEST(SeriesOverPoly, BivariateExpansion)
{
    // exp(x t): [t^n] = x^n / n!
    std::vector<Poly> c{Poly(), Poly::x()};
    truncated_series<Poly> s(c, 5);
    truncated_series<Poly> e = exp_series(s);
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(e.coefficient(n), Poly::monomial(n, q(1) / factorial(n)));
}

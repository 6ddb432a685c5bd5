#include <gtest/gtest.h>

#include "fracleibniz/cli/random.hpp"
#include "fracleibniz/errors.hpp"
#include "fracleibniz/leibniz.hpp"
#include "fracleibniz/lemmas.hpp"
#include "fracleibniz/oracle/rl_naive.hpp"

using namespace fracleibniz;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

const Rational half = q(1, 2);

std::vector<ShefferFamily> product_families()
{
    return {families::bernoulli(), families::euler(),           families::hermite(),           families::falling(),
            families::rising(),    families::exponential(),     families::laguerre(q(0)),      families::laguerre(q(1, 2)),
            families::laguerre(q(2))};
}

Poly x() { return Poly::x(); }

} // namespace

TEST(IntegerLeibniz, Examples)
{
    EXPECT_EQ(integer_leibniz(x(), x(), 1), Poly::monomial(1, q(2)));
    Poly f{q(1), q(2)}, g{q(3), q(0), q(1)};
    EXPECT_EQ(integer_leibniz(f, g, 0), f * g);
    EXPECT_EQ(integer_leibniz(Poly::monomial(2), Poly::monomial(3), 3), Poly::monomial(2, q(60)));
}

TEST(XnProduct, Examples)
{
    FracPoly expected(half, GammaBase::one_minus_a, {{2, q(8, 3)}});
    EXPECT_EQ(thm_xn_product(1, x(), half), expected);
    EXPECT_EQ(thm_xn_product(2, Poly::constant(q(1)), half), expected);
    EXPECT_EQ(classical_leibniz_terminating(1, x(), half), expected);
    Poly f{q(2), q(-1), q(3)};
    EXPECT_EQ(thm_xn_product(3, f, q(0)), FracPoly::from_poly(shift(f, 3)));
    EXPECT_EQ(classical_leibniz_terminating(2, Poly{q(1), q(0), q(1)}, q(1, 3)), thm_xn_product(2, Poly{q(1), q(0), q(1)}, q(1, 3)));
}

TEST(XnProduct, ConstantFIsSingleTerm)
{
    for (std::size_t n = 0; n <= 5; ++n) {
        FracPoly c = classical_leibniz_terminating(n, Poly::constant(q(7, 2)), q(1, 3));
        EXPECT_EQ(c.term_count(), 1u);
        EXPECT_EQ(c, rl_frac_derivative(Poly::monomial(n), q(1, 3)) * q(7, 2));
    }
}

TEST(XnProduct, PositiveIntegerOrderRejected)
{
    EXPECT_THROW(thm_xn_product(2, x(), q(1)), integer_order_error);
}

TEST(XnProperty, ThreeWayEquality)
{
    cli::Rng rng(1);
    for (const Rational& a : {half, q(1, 3), q(3, 2), q(-1, 2)})
        for (std::size_t n = 0; n <= 6; ++n)
            for (std::size_t d = 0; d <= 5; ++d) {
                Poly f = rng.poly(d);
                FracPoly thm = thm_xn_product(n, f, a);
                EXPECT_EQ(thm, classical_leibniz_terminating(n, f, a));
                EXPECT_EQ(thm, rl_frac_derivative(shift(f, n), a));
            }
}

TEST(HypProduct, ReducesToClosedFormForConstantF)
{
    const std::size_t K = 12;
    for (const Rational& a : {half, q(1, 3), q(2)})
        for (std::size_t n = 1; n <= 4; ++n)
            EXPECT_EQ(thm_0f1_product(n, Poly::constant(q(1)), a, K).coefficients, frac_deriv_0f1(n, a, K).expand());
}

TEST(HypProduct, ZeroOrderIsPlainProduct)
{
    const std::size_t K = 10;
    Poly f{q(1), q(-2), q(1, 3)};
    for (std::size_t n = 1; n <= 4; ++n) {
        HypSeries s = thm_0f1_product(n, f, q(0), K);
        EXPECT_EQ(s.coefficients, truncate_poly(hyp0f1_series(q(static_cast<long>(n) + 1), K) * f, K));
    }
}

TEST(HypProduct, FirstOrderExample)
{
    const std::size_t K = 12;
    HypSeries s = thm_0f1_product(1, x(), q(1), K);
    Poly direct = derivative(truncate_poly(hyp0f1_series(q(2), K) * x(), K), 1);
    EXPECT_EQ(truncate_poly(s.coefficients, K - 2), truncate_poly(direct, K - 2));
}

TEST(HypProperty, IntegerOrdersMatchOrdinaryDifferentiation)
{
    const std::size_t K = 14;
    cli::Rng rng(3);
    for (std::size_t a = 1; a <= 3; ++a)
        for (std::size_t n = 1; n <= 4; ++n)
            for (std::size_t d = 0; d <= 3; ++d) {
                Poly f = rng.poly(d);
                HypSeries s = thm_0f1_product(n, f, q(static_cast<long>(a)), K);
                Poly direct = derivative(truncate_poly(hyp0f1_series(q(static_cast<long>(n) + 1), K) * f, K), a);
                const std::size_t upto = K - a - d;
                EXPECT_EQ(truncate_poly(scale(s.coefficients, q(1) / factorial(a)), upto), truncate_poly(direct, upto))
                    << "a=" << a << " n=" << n << " d=" << d;
            }
}

TEST(HypProduct, TruncationAtNDropsTermsWhenOrderExceedsN)
{
    // n = 1, a = 2, f = x^2: the m = 2 term 2 * 0F1(2; x) is outside m <= n.
    const std::size_t K = 10;
    Poly f = Poly::monomial(2);
    HypSeries complete = thm_0f1_product(1, f, q(2), K, HypTruncation::complete);
    HypSeries at_n = thm_0f1_product(1, f, q(2), K, HypTruncation::at_n);
    Poly direct = derivative(truncate_poly(hyp0f1_series(q(2), K) * f, K), 2);
    EXPECT_EQ(truncate_poly(scale(complete.coefficients, q(1, 2)), K - 4), truncate_poly(direct, K - 4));
    EXPECT_NE(truncate_poly(scale(at_n.coefficients, q(1, 2)), K - 4), truncate_poly(direct, K - 4));
    Poly missing = scale(hyp0f1_series(q(2), K), q(2) * q(2)); // weight 2 over the Gamma(3) base
    EXPECT_EQ(complete.coefficients - at_n.coefficients, truncate_poly(missing, K));
}

TEST(HypProduct, BothModesAgreeWhenDegreeAtMostN)
{
    cli::Rng rng(4);
    for (const Rational& a : {half, q(2), q(3)})
        for (std::size_t n = 1; n <= 4; ++n) {
            Poly f = rng.poly(n);
            EXPECT_EQ(thm_0f1_product(n, f, a, 10, HypTruncation::complete), thm_0f1_product(n, f, a, 10, HypTruncation::at_n));
        }
}

TEST(HypProduct, PolesRejected)
{
    EXPECT_THROW(thm_0f1_product(2, x(), q(-1), 5), pole_error);
}

TEST(Weights, FallingTable)
{
    auto w = product_rule_weights(FamilyKind::falling, 2);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0].u, 1u);
    EXPECT_EQ(w[0].coefficient, q(-1));
    EXPECT_EQ(w[1].u, 2u);
    EXPECT_EQ(w[1].coefficient, q(1));
    EXPECT_EQ(w[0].polynomial_in_a(), (Poly{q(0), q(-1)}));
    EXPECT_EQ(w[1].polynomial_in_a(), (Poly{q(0), q(-1), q(1)}));
}

TEST(Weights, AppellAndLaguerreConventions)
{
    auto ap = product_rule_weights(FamilyKind::appell, 3);
    ASSERT_EQ(ap.size(), 1u);
    EXPECT_EQ(ap[0].u, 3u);
    auto l0 = product_rule_weights(FamilyKind::laguerre, 0);
    ASSERT_EQ(l0.size(), 1u);
    EXPECT_EQ(l0[0].u, 0u);
    EXPECT_EQ(l0[0].coefficient, q(1));
    EXPECT_THROW(product_rule_weights(FamilyKind::generic, 2), unsupported_family_error);
}

TEST(Weights, ReadOffFromInverseDeltaSeries)
{
    // sum_m w_{m,u} t^m/m! = kinv(t)^u/u!
    const std::size_t M = 8;
    for (const auto& fam : product_families()) {
        PowerSeries kinv = fam.kinv(M);
        for (std::size_t u = 0; u <= M; ++u) {
            PowerSeries ku = power(kinv, u) * (q(1) / factorial(u));
            for (std::size_t m = 0; m <= M; ++m) {
                Rational w = 0;
                for (const auto& e : product_rule_weights(fam.kind(), m))
                    if (e.u == u) w = e.coefficient;
                if (fam.kind() == FamilyKind::laguerre && m == 0) continue; // identity convention
                EXPECT_EQ(w, ku.coefficient(m) * factorial(m)) << fam.name() << " m=" << m << " u=" << u;
            }
        }
    }
}

TEST(Weights, RisingFallingDuality)
{
    // Rising weight polynomial in a equals (-1)^m times the falling one with
    // (a)_u replaced by (-1)^u (a)_u.
    for (std::size_t m = 0; m <= 8; ++m) {
        Poly rising, dual;
        for (const auto& w : product_rule_weights(FamilyKind::rising, m)) rising += w.polynomial_in_a();
        for (const auto& w : product_rule_weights(FamilyKind::falling, m))
            dual += scale(w.polynomial_in_a(), (w.u % 2 ? q(-1) : q(1)) * (m % 2 ? q(-1) : q(1)));
        EXPECT_EQ(rising, dual) << "m=" << m;
    }
}

TEST(Weights, NaiveDualRisingTableIsTheLiteralDual)
{
    for (std::size_t m = 0; m <= 8; ++m) {
        auto naive = rising_weights_naive_dual(m);
        auto falling = product_rule_weights(FamilyKind::falling, m);
        ASSERT_EQ(naive.size(), falling.size());
        for (std::size_t i = 0; i < naive.size(); ++i)
            EXPECT_EQ(naive[i].coefficient, falling[i].coefficient * (falling[i].u % 2 ? q(-1) : q(1)));
    }
}

TEST(Weights, NaiveDualRisingTableFailsAtOddM)
{
    // Using the naive dual table for n = 1, f = 1 gives D^(1/2) x = 0.
    Rational a = half;
    FracPoly out(a, GammaBase::one_minus_a);
    const auto& fam = families::rising();
    for (std::size_t m = 0; m <= 1; ++m)
        for (const auto& w : rising_weights_naive_dual(m))
            out += scale(fam.polynomial(1 - m), binomial(1, m) * w.coefficient * pochhammer_falling(a, w.u))
                * frac_derivative_in_base(Poly::constant(q(1)), a, w.u);
    EXPECT_TRUE(out.is_zero());
    EXPECT_FALSE(cor_frac_sheffer(fam, 1, a).is_zero());
}

TEST(FamilyRule, Examples)
{
    cli::Rng rng(9);
    Poly f = rng.poly(3);
    for (const Rational& a : {half, q(1, 3)}) {
        // bernoulli n = 1: (x - 1/2) D^a f + a D^(a-1) f
        FracPoly b = frac_product_rule(families::bernoulli(), 1, f, a);
        FracPoly expect_b = Poly{q(-1, 2), q(1)} * rl_frac_derivative(f, a) + frac_derivative_in_base(f, a, 1) * a;
        EXPECT_EQ(b, expect_b);
        EXPECT_EQ(b, thm_xn_product(1, f, a) - rl_frac_derivative(f, a) * half);
        // laguerre n = 1: L_1 D^a f - a D^(a-1) f
        Rational beta = q(1, 2);
        FracPoly l = frac_product_rule(families::laguerre(beta), 1, f, a);
        FracPoly expect_l = Poly{beta + 1, q(-1)} * rl_frac_derivative(f, a) - frac_derivative_in_base(f, a, 1) * a;
        EXPECT_EQ(l, expect_l);
    }
    FracPoly fall = frac_product_rule(families::falling(), 2, Poly::constant(q(1)), half);
    EXPECT_EQ(fall, FracPoly(half, GammaBase::one_minus_a, {{2, q(8, 3)}, {1, q(-2)}}));
}

TEST(FamilyRule, GenericRejected)
{
    ShefferFamily g = families::generic([](std::size_t K) { return PowerSeries::constant(q(1), K); },
                                        [](std::size_t K) { return series::expm1(K); });
    EXPECT_THROW(frac_product_rule(g, 2, x(), half), unsupported_family_error);
}

TEST(FamilyProperty, ProductRuleMatchesOracle)
{
    cli::Rng rng(21);
    for (const auto& fam : product_families())
        for (std::size_t d = 0; d <= 4; ++d) {
            Poly f = rng.poly(d);
            for (std::size_t n = 0; n <= 6; ++n)
                for (const Rational& a : {half, q(1, 3), q(3, 2)})
                    EXPECT_EQ(frac_product_rule(fam, n, f, a), oracle::rl_oracle_naive(fam.polynomial(n) * f, a))
                        << fam.name() << " n=" << n << " d=" << d << " a=" << to_string(a);
        }
}

TEST(FamilyProperty, ZeroOrderCollapsesToProduct)
{
    cli::Rng rng(22);
    for (const auto& fam : product_families())
        for (std::size_t n = 0; n <= 5; ++n) {
            Poly f = rng.poly(2);
            EXPECT_EQ(frac_product_rule(fam, n, f, q(0)), FracPoly::from_poly(fam.polynomial(n) * f)) << fam.name();
        }
}

TEST(Corollary, Examples)
{
    for (std::size_t n = 0; n <= 6; ++n)
        EXPECT_EQ(cor_frac_sheffer(families::monomial(), n, q(1, 3)), rl_frac_derivative(Poly::monomial(n), q(1, 3)));
    EXPECT_EQ(cor_frac_sheffer(families::falling(), 2, half), FracPoly(half, GammaBase::one_minus_a, {{2, q(8, 3)}, {1, q(-2)}}));
}

TEST(Corollary, MatchesOracle)
{
    for (const auto& fam : product_families())
        for (std::size_t n = 0; n <= 6; ++n)
            for (const Rational& a : {half, q(1, 3), q(3, 2)})
                EXPECT_EQ(cor_frac_sheffer(fam, n, a), oracle::rl_oracle_naive(fam.polynomial(n), a)) << fam.name() << " n=" << n;
}

TEST(Corollary, AppellIntegerReduction)
{
    for (const auto& fam : {families::bernoulli(), families::euler(), families::hermite()})
        for (std::size_t n = 0; n <= 6; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                EXPECT_EQ(integer_order_sheffer(fam, n, j), scale(fam.polynomial(n - j), factorial(n) / factorial(n - j)));
}

TEST(Corollary, AppellFractionalOrderNormalization)
{
    // Ap_{n-a} = Gamma(n-a+1)/n! D^a Ap_n; for Ap_n = x^n this is x^(n-a) exactly.
    for (std::size_t n = 0; n <= 5; ++n) {
        FracPoly u = appell_fractional_order(families::monomial(), n, q(1, 3));
        EXPECT_EQ(u.base(), GammaBase::none);
        EXPECT_EQ(u, FracPoly(q(1, 3), GammaBase::none, {{n, q(1)}}));
    }
    EXPECT_THROW(appell_fractional_order(families::falling(), 2, half), unsupported_family_error);
}

TEST(Corollary, SideConditionWarnings)
{
    EXPECT_TRUE(cor_side_condition_warnings(families::hermite(), 3, half).empty());
    EXPECT_FALSE(cor_side_condition_warnings(families::hermite(), 0, half).empty());
    EXPECT_FALSE(cor_side_condition_warnings(families::falling(), 2, q(-1, 2)).empty());
}

TEST(Generalized, Examples)
{
    Poly t = Poly::x(); // v(t) = t
    cli::Rng rng(5);
    for (const auto& fam : families::builtins(q(1, 2))) {
        Poly j = rng.poly(2);
        for (std::size_t n = 0; n <= 4; ++n) {
            Poly expect = derivative(fam.polynomial(n), 1) * j + fam.polynomial(n) * derivative(j, 1);
            EXPECT_EQ(generalized_operator_product(fam, n, t, j), expect);
            EXPECT_EQ(generalized_operator_lhs(fam, n, t, j), expect);
        }
    }
    EXPECT_EQ(generalized_operator_product(families::falling(), 2, Poly::monomial(2), x()), derivative(Poly{q(0), q(0), q(-1), q(1)}, 2));
}

TEST(Generalized, FiniteDeltaOperatorOnFalling)
{
    // v = degree-n truncation of e^t - 1 acts on (x)_n as n (x)_(n-1).
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<Rational> c(n + 1, q(0));
        for (std::size_t i = 1; i <= n; ++i) c[i] = q(1) / factorial(i);
        Poly v(c);
        Poly got = generalized_operator_product(families::falling(), n, v, Poly::constant(q(1)));
        EXPECT_EQ(got, scale(families::falling().polynomial(n - 1), q(static_cast<long>(n))));
    }
}

TEST(GeneralizedProperty, RandomInstances)
{
    cli::Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        auto fams = families::builtins(q(2));
        const auto& fam = fams[rng.below(fams.size())];
        std::size_t n = rng.below(6);
        Poly v = rng.poly(rng.below(4)), j = rng.poly(rng.below(4));
        EXPECT_EQ(generalized_operator_lhs(fam, n, v, j), generalized_operator_product(fam, n, v, j)) << fam.name();
    }
}

TEST(KOperator, Examples)
{
    cli::Rng rng(6);
    Poly f = rng.poly(4);
    PowerSeries t2(std::vector<Rational>{q(0), q(0), q(1)}, 10);
    EXPECT_EQ(cor_k_operator_xn(t2, 1, f), x() * derivative(f, 2) + scale(derivative(f, 1), q(2)));
    PowerSeries t1 = PowerSeries::identity(10);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(cor_k_operator_xn(t1, n, f), derivative(shift(f, n), 1));
    PowerSeries t3(std::vector<Rational>{q(0), q(0), q(0), q(1)}, 6);
    EXPECT_EQ(cor_k_operator_xn(t3, 2, Poly::monomial(2)), Poly::monomial(1, q(24)));
}

TEST(KOperator, ShortSymbolRejected)
{
    EXPECT_THROW(cor_k_operator_xn(series::expm1(3), 2, Poly::monomial(2)), truncation_error);
}

TEST(KOperator, MatchesDirectApplication)
{
    cli::Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        std::size_t n = rng.below(5);
        Poly f = rng.poly(rng.below(4));
        PowerSeries k = series::expm1(12);
        EXPECT_EQ(cor_k_operator_xn(k, n, f), apply_series_operator(k, shift(f, n)));
    }
}

TEST(Lemmas, Examples)
{
    auto ln2 = lemma_derivative_table(LemmaVariant::ln, 2);
    EXPECT_EQ(ln2, (std::vector<LemmaTerm>{{1, q(-1), -2}, {2, q(1), -2}}));
    auto exp2 = lemma_derivative_table(LemmaVariant::exp, 2);
    EXPECT_EQ(exp2, (std::vector<LemmaTerm>{{1, q(1), 1}, {2, q(1), 2}}));
    auto rec1 = lemma_derivative_table(LemmaVariant::recip, 1);
    EXPECT_EQ(rec1, (std::vector<LemmaTerm>{{1, q(-1), -2}}));
    EXPECT_EQ(lemma_derivative_table(LemmaVariant::recip, 0), (std::vector<LemmaTerm>{{0, q(1), 0}}));
}

TEST(Lemmas, IteratedLnReducesToLnTable)
{
    for (std::size_t m = 1; m <= 6; ++m) {
        ChainTable t = iterated_ln_derivative(1, m);
        auto ln = lemma_derivative_table(LemmaVariant::ln, m);
        ASSERT_EQ(t.size(), ln.size());
        for (const auto& term : ln) EXPECT_EQ(t.at({term.derivative}), term.coefficient);
    }
    ChainTable two = iterated_ln_derivative(2, 1);
    EXPECT_EQ(two, (ChainTable{{{1, 1}, q(1)}}));
    EXPECT_THROW(iterated_ln_derivative(0, 2), std::invalid_argument);
}

#include <gtest/gtest.h>

#include "fracleibniz/errors.hpp"
#include "fracleibniz/series.hpp"
#include "fracleibniz/sheffer.hpp"

using namespace fracleibniz;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

std::vector<ShefferFamily> all_families()
{
    auto v = families::builtins(0);
    v.push_back(families::laguerre(q(1, 2)));
    v.push_back(families::laguerre(q(2)));
    return v;
}

} // namespace

TEST(ShefferPolynomial, Examples)
{
    EXPECT_EQ(sheffer_polynomial(families::falling(), 2), (Poly{q(0), q(-1), q(1)}));
    for (const auto& fam : all_families()) EXPECT_EQ(sheffer_polynomial(fam, 0), Poly::constant(q(1))) << fam.name();
    for (const Rational& beta : {q(0), q(1, 2), q(2), q(-1, 3)})
        EXPECT_EQ(sheffer_polynomial(families::laguerre(beta), 1), (Poly{beta + 1, q(-1)}));
}

TEST(ShefferPolynomial, KnownFamilies)
{
    EXPECT_EQ(families::bernoulli().polynomial(2), (Poly{q(1, 6), q(-1), q(1)}));
    EXPECT_EQ(families::euler().polynomial(2), (Poly{q(0), q(-1), q(1)}));
    EXPECT_EQ(families::hermite().polynomial(4), (Poly{q(3), q(0), q(-6), q(0), q(1)}));
    EXPECT_EQ(families::rising().polynomial(3), (Poly{q(0), q(2), q(3), q(1)}));
    EXPECT_EQ(families::exponential().polynomial(3), (Poly{q(0), q(1), q(3), q(1)}));
    // 2! times the classical L_2^(0) = (x^2 - 4x + 2)/2.
    EXPECT_EQ(families::laguerre(q(0)).polynomial(2), (Poly{q(2), q(-4), q(1)}));
}

TEST(Appell, FromG)
{
    EXPECT_EQ(families::bernoulli().polynomial(1), (Poly{q(-1, 2), q(1)}));
    EXPECT_EQ(families::euler().polynomial(1), (Poly{q(-1, 2), q(1)}));
    ShefferFamily trivial = families::appell_from_g(PowerSeries::constant(q(1), 12));
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(trivial.polynomial(n), Poly::monomial(n));
}

TEST(Appell, RejectsZeroConstantTerm)
{
    EXPECT_THROW(families::appell_from_g(PowerSeries::identity(5)), series_order_error);
}

TEST(Appell, NonUnitConstantTerm)
{
    // g = 2: s_0 = 1/2, s_n = x^n / 2.
    ShefferFamily fam = families::appell_from_g(PowerSeries::constant(q(2), 10), "halved");
    EXPECT_EQ(fam.polynomial(0), Poly::constant(q(1, 2)));
    EXPECT_EQ(fam.polynomial(3), Poly::monomial(3, q(1, 2)));
    EXPECT_TRUE(check_sheffer_relation(fam, 3));
}

TEST(Generic, RejectsBadDeltaSeries)
{
    auto g = fixed_series(PowerSeries::constant(q(1), 10));
    auto bad = fixed_series(PowerSeries(std::vector<Rational>{q(0), q(0), q(1)}, 10));
    EXPECT_THROW(families::generic(g, bad), series_order_error);
}

TEST(Generic, FromDeltaSeriesMatchesBuiltin)
{
    // k(t) = e^t - 1 with g = 1 gives the falling factorials.
    ShefferFamily fam = families::generic([](std::size_t K) { return PowerSeries::constant(q(1), K); },
                                          [](std::size_t K) { return series::expm1(K); });
    for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(fam.polynomial(n), families::falling().polynomial(n));
    EXPECT_EQ(fam.k(6), series::expm1(6));
}

TEST(ShefferRelation, Examples)
{
    EXPECT_TRUE(check_sheffer_relation(families::falling(), 3));
    EXPECT_TRUE(check_sheffer_relation(families::bernoulli(), 5));
    EXPECT_TRUE(check_sheffer_relation(families::laguerre(q(1, 2)), 2));
    EXPECT_THROW(check_sheffer_relation(families::falling(), 0), std::invalid_argument);
}

TEST(ShefferRelation, ForwardDifferenceOnFalling)
{
    // (e^D - 1)(x)_3 = (x+1)_3 - (x)_3 = 3 (x)_2
    Poly f3 = families::falling().polynomial(3);
    Poly shifted = apply_series_operator(series::exp(8), f3);
    EXPECT_EQ(shifted - f3, scale(families::falling().polynomial(2), q(3)));
}

TEST(ShefferProperty, ClosedFormsMatchGeneratingFunction)
{
    for (const auto& fam : all_families()) {
        ASSERT_TRUE(fam.has_closed_form()) << fam.name();
        for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(*fam.closed_form(n), fam.generating_polynomial(n)) << fam.name() << " n=" << n;
    }
}

TEST(ShefferProperty, DeltaOperatorRelation)
{
    for (const auto& fam : all_families())
        for (std::size_t n = 1; n <= 8; ++n) EXPECT_TRUE(check_sheffer_relation(fam, n)) << fam.name() << " n=" << n;
}

TEST(ShefferProperty, DegreeAndLeadingCoefficient)
{
    for (const auto& fam : all_families()) {
        for (std::size_t n = 0; n <= 8; ++n) {
            Poly p = fam.polynomial(n);
            EXPECT_EQ(p.degree(), static_cast<long>(n));
            if (fam.kind() == FamilyKind::laguerre)
                EXPECT_EQ(p.leading(), n % 2 ? q(-1) : q(1));
            else
                EXPECT_EQ(p.leading(), q(1)) << fam.name();
        }
    }
}

TEST(ShefferProperty, GeneratingIdentityToTruncation)
{
    // sum_n s_n(x0) t^n/n! = exp(x0 kinv(t)) / g(kinv(t)) at a rational point x0.
    const std::size_t K = 8;
    const Rational x0 = q(3, 7);
    for (const auto& fam : all_families()) {
        PowerSeries kinv = fam.kinv(K);
        PowerSeries rhs = exp_series(kinv * x0) * reciprocal(compose(fam.g(K), kinv));
        std::vector<Rational> lhs;
        for (std::size_t n = 0; n <= K; ++n) lhs.push_back(fam.polynomial(n)(x0) / factorial(n));
        EXPECT_EQ(PowerSeries(lhs, K), rhs) << fam.name();
    }
}

TEST(ShefferFamilyType, CachesAreSharedAcrossCopies)
{
    ShefferFamily a = families::hermite();
    ShefferFamily b = a;
    EXPECT_EQ(a.polynomial(6), b.polynomial(6));
}

TEST(ShefferFamilyType, KindsAndNames)
{
    EXPECT_EQ(families::exponential().kind(), FamilyKind::exponential);
    EXPECT_TRUE(is_appell_kind(families::hermite().kind()));
    EXPECT_FALSE(is_appell_kind(families::laguerre(q(0)).kind()));
    EXPECT_EQ(*families::laguerre(q(1, 2)).beta(), q(1, 2));
}

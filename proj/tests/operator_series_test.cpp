#include <gtest/gtest.h>

#include <psi_opcalc/operator_series.hpp>

#include "oracles.hpp"

using namespace psi_opcalc;

namespace
{

std::vector<Rational> R(std::initializer_list<long> nums)
{
    std::vector<Rational> out;
    for (long n : nums) {
        out.push_back(make_rational(n));
    }
    return out;
}

std::vector<Rational> prefix(const OperatorSeries &s, std::size_t order)
{
    std::vector<Rational> out;
    for (std::size_t k = 0; k <= order; ++k) {
        out.push_back(s.coefficient(k));
    }
    return out;
}

} // namespace

TEST(OperatorSeries, Apply)
{
    const auto cl = PsiFamily::classical();
    EXPECT_EQ(op_apply(OperatorSeries::identity(), cl, Polynomial::monomial(5)), Polynomial::monomial(5));
    EXPECT_EQ(op_apply(OperatorSeries::derivative(), cl, Polynomial::monomial(3)), Polynomial::monomial(2, Rational(3)));
    EXPECT_EQ(op_apply(translation(cl, Rational(1), 2), cl, Polynomial::monomial(2)),
              Polynomial(R({1, 2, 1})));
}

TEST(OperatorSeries, TruncationTooShort)
{
    const auto cl = PsiFamily::classical();
    const auto inv = op_invert(OperatorSeries::finite(R({2, 1})), 2);
    EXPECT_NO_THROW(op_apply(inv, cl, Polynomial::monomial(2)));
    EXPECT_THROW(op_apply(inv, cl, Polynomial::monomial(3)), TruncationTooShort);
    // Generated series extend on demand.
    EXPECT_NO_THROW(op_apply(delta_psi(cl), cl, Polynomial::monomial(30)));
}

TEST(OperatorSeries, Multiply)
{
    const auto b = OperatorSeries::finite(R({3, 0, 5}));
    EXPECT_EQ(op_mul(OperatorSeries::identity(), b, 4), b);
    EXPECT_EQ(op_mul(OperatorSeries::derivative(), OperatorSeries::derivative(), 4), OperatorSeries::finite(R({0, 0, 1})));
    EXPECT_EQ(prefix(op_mul(OperatorSeries::finite(R({1, 1})), OperatorSeries::finite(R({1, -1})), 2), 2), R({1, 0, -1}));
    EXPECT_FALSE(op_mul(b, b, 2).is_finite());
}

TEST(OperatorSeries, Invert)
{
    EXPECT_EQ(prefix(op_invert(OperatorSeries::identity(), 5), 5), R({1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(prefix(op_invert(OperatorSeries::finite(R({2, 1})), 2), 2),
              (std::vector<Rational>{make_rational(1, 2), make_rational(-1, 4), make_rational(1, 8)}));
    EXPECT_THROW(op_invert(OperatorSeries::finite(R({0, 1})), 3), NotInvertible);
}

TEST(OperatorSeries, InvertClassicalShiftMatchesBernoulli)
{
    // S with c_k = 1/(k+1)!; the inverse has c_k = B_k/k!.
    const auto cl = PsiFamily::classical();
    const auto s = OperatorSeries::generated([](std::size_t k) { return Rational(1, factorial(k + 1)); }, 12);
    const auto inv = op_invert(s, 12);
    const auto b = oracle::bernoulli_numbers(12);
    for (std::size_t k = 0; k <= 12; ++k) {
        ASSERT_EQ(inv.coefficient(k), b[k] / Rational(factorial(k))) << k;
    }
    EXPECT_EQ(prefix(inv, 4), (std::vector<Rational>{Rational(1), make_rational(-1, 2), make_rational(1, 12), Rational(0),
                                                     make_rational(-1, 720)}));
}

TEST(OperatorSeries, DeltaFactorize)
{
    const auto cl = PsiFamily::classical();
    EXPECT_EQ(prefix(delta_factorize(OperatorSeries::derivative()).s, 3), R({1, 0, 0, 0}));
    EXPECT_EQ(delta_factorize(OperatorSeries::finite(R({0, 2, 1}))).s, OperatorSeries::finite(R({2, 1})));

    const auto s = delta_factorize(delta_psi(cl)).s;
    for (std::size_t k = 0; k <= 10; ++k) {
        ASSERT_EQ(s.coefficient(k), Rational(1, factorial(k + 1)));
    }
    EXPECT_THROW(delta_factorize(OperatorSeries::finite(R({1, 1}))), NotDeltaOperator);
    EXPECT_THROW(delta_factorize(OperatorSeries::finite(R({0, 0, 1}))), NotDeltaOperator);
}

TEST(OperatorSeries, AppellOperator)
{
    const auto cl = PsiFamily::classical();
    EXPECT_EQ(prefix(appell_operator(OperatorSeries::derivative(), 4), 4), R({1, 0, 0, 0, 0}));
    EXPECT_EQ(prefix(appell_operator(delta_psi(cl), 4), 4),
              (std::vector<Rational>{Rational(1), make_rational(-1, 2), make_rational(1, 12), Rational(0),
                                     make_rational(-1, 720)}));

    // Fibonacci: S raw = 1/(k+1)_F! = 1, 1, 1/2, 1/6; hand inversion gives 1, -1, 1/2, -1/6.
    const auto fib = PsiFamily::fibonacci();
    const auto a_hat = appell_operator(delta_psi(fib), 3);
    EXPECT_EQ(prefix(a_hat, 3), (std::vector<Rational>{Rational(1), Rational(-1), make_rational(1, 2), make_rational(-1, 6)}));
    EXPECT_TRUE(agree_up_to(op_mul(delta_factorize(delta_psi(fib)).s, a_hat, 3), OperatorSeries::identity(), 3));
}

TEST(OperatorSeries, AppellNumbers)
{
    const auto cl = PsiFamily::classical();
    const auto nums = appell_numbers_from(appell_operator(delta_psi(cl), 4), cl, 4);
    EXPECT_EQ(nums.values, (std::vector<Rational>{Rational(1), make_rational(-1, 2), make_rational(1, 6), Rational(0),
                                                  make_rational(-1, 30)}));
    EXPECT_EQ(appell_numbers_from(appell_operator(OperatorSeries::derivative(), 5), cl, 5).values, R({1, 0, 0, 0, 0, 0}));

    const auto fib = PsiFamily::fibonacci();
    const auto fnums = appell_numbers_from(appell_operator(delta_psi(fib), 3), fib, 3);
    EXPECT_EQ(fnums.values, (std::vector<Rational>{Rational(1), Rational(-1), make_rational(1, 2), make_rational(-1, 3)}));
}

TEST(OperatorSeries, Translation)
{
    const auto cl = PsiFamily::classical();
    EXPECT_EQ(translation(cl, Rational(0), 5), OperatorSeries::identity());
    const Rational a = make_rational(-3, 2);
    EXPECT_EQ(op_apply(translation(cl, a, 2), cl, Polynomial::monomial(2)),
              Polynomial(std::vector<Rational>{a * a, 2 * a, Rational(1)}));

    const auto fib = PsiFamily::fibonacci();
    EXPECT_EQ(op_apply(translation(fib, Rational(1), 2), fib, Polynomial::monomial(2)), Polynomial(R({1, 1, 1})));
}

TEST(OperatorSeries, MakeOperator)
{
    const auto cl = PsiFamily::classical();
    EXPECT_EQ(make_operator("deriv", cl), OperatorSeries::derivative());
    EXPECT_EQ(prefix(make_operator("delta_psi", cl), 3), prefix(delta_psi(cl), 3));
    EXPECT_EQ(make_operator("0, 1, 1/2", cl), OperatorSeries::finite({Rational(0), Rational(1), make_rational(1, 2)}));
    EXPECT_THROW(make_operator("bogus", cl), ParseError);
    EXPECT_THROW(make_operator("custom:/no/such/file", cl), ParseError);
}

TEST(OperatorSeriesProperty, InverseCertificate)
{
    oracle::RandomRationals rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t order = 1 + rng.index(15);
        std::vector<Rational> c(1 + rng.index(8));
        c[0] = rng.nonzero();
        for (std::size_t k = 1; k < c.size(); ++k) {
            c[k] = rng.next();
        }
        const auto s = OperatorSeries::finite(c);
        ASSERT_TRUE(agree_up_to(op_mul(s, op_invert(s, order), order), OperatorSeries::identity(), order));
    }
}

TEST(OperatorSeriesProperty, FactorizationReproducesQ)
{
    oracle::RandomRationals rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = rng.delta_shaped(2 + rng.index(8));
        const auto s = delta_factorize(q).s;
        ASSERT_EQ(op_mul(OperatorSeries::derivative(), s, q.truncation_order()), q);
    }
    const auto fib = PsiFamily::fibonacci();
    const auto q = delta_psi(fib, 12);
    EXPECT_TRUE(agree_up_to(op_mul(OperatorSeries::derivative(), delta_factorize(q).s, 12), q, 12));
}

TEST(OperatorSeriesProperty, ApplyIsLinear)
{
    oracle::RandomRationals rng(3);
    for (const auto &f : oracle::preset_families()) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto q = rng.delta_shaped();
            const auto p = rng.polynomial(12), r = rng.polynomial(12);
            const Rational a = rng.next(), b = rng.next();
            ASSERT_EQ(op_apply(q, f, p * a + r * b), op_apply(q, f, p) * a + op_apply(q, f, r) * b);
        }
    }
}

TEST(OperatorSeriesProperty, ClassicalTranslationIsSubstitution)
{
    oracle::RandomRationals rng(9);
    const auto cl = PsiFamily::classical();
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = rng.polynomial(20);
        const Rational a = rng.next();
        // p(x + a) by Horner over polynomials.
        Polynomial shifted;
        const Polynomial x_plus_a(std::vector<Rational>{a, Rational(1)});
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
            shifted = shifted * x_plus_a + Polynomial::constant(*it);
        }
        ASSERT_EQ(op_apply(translation(cl, a, 0), cl, p), shifted);
    }
}

TEST(OperatorSeriesProperty, AppellConvolution)
{
    // Σ_k C(n,k)ψ A_k s_{n-k} = δ_{n0}, with s_k = kψ! × (raw coefficient of S).
    for (const auto &f : oracle::preset_families()) {
        const auto q = delta_psi(f, 13);
        const auto s = delta_factorize(q).s;
        const auto nums = appell_numbers_from(appell_operator(q, 12), f, 12);
        for (std::size_t n = 0; n <= 12; ++n) {
            Rational acc(0);
            for (std::size_t k = 0; k <= n; ++k) {
                acc += psi_binomial(f, n, k) * nums.values[k] * f.factorial(n - k) * s.coefficient(n - k);
            }
            ASSERT_EQ(acc, n == 0 ? 1 : 0) << f.name() << " n=" << n;
        }
    }
}

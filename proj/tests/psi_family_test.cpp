#include <sstream>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include <psi_opcalc/psi_family.hpp>

#include "oracles.hpp"

using namespace psi_opcalc;

TEST(PsiFamily, ClassicalValues)
{
    const auto f = PsiFamily::classical();
    EXPECT_EQ(n_psi(f, 5), 5);
    EXPECT_EQ(n_psi(f, 0), 0);
    EXPECT_EQ(psi_factorial(f, 0), 1);
    EXPECT_EQ(psi_factorial(f, 4), 24);
    EXPECT_EQ(falling_psi(f, 5, 2), 20);
}

TEST(PsiFamily, QGaussValues)
{
    const auto q2 = PsiFamily::q_gauss(Rational(2));
    EXPECT_EQ(n_psi(q2, 3), 7);
    EXPECT_EQ(psi_factorial(q2, 3), 21);
    EXPECT_EQ(n_psi(PsiFamily::q_gauss(make_rational(2, 3)), 2), make_rational(5, 3));

    // Closed form (1 - q^n)/(1 - q).
    const Rational q = make_rational(-3, 7);
    const auto fam = PsiFamily::q_gauss(q);
    Rational qn(1);
    for (std::size_t n = 1; n <= 20; ++n) {
        qn *= q;
        EXPECT_EQ(n_psi(fam, n), (1 - qn) / (1 - q)) << "n=" << n;
    }
}

TEST(PsiFamily, QEqualOneIsClassical)
{
    const auto q1 = PsiFamily::q_gauss(Rational(1));
    const auto c = PsiFamily::classical();
    for (std::size_t n = 0; n <= 50; ++n) {
        ASSERT_EQ(n_psi(q1, n), n_psi(c, n));
        ASSERT_EQ(psi_factorial(q1, n), psi_factorial(c, n));
    }
}

TEST(PsiFamily, DegenerateQ)
{
    const auto f = PsiFamily::q_gauss(Rational(-1));
    EXPECT_EQ(n_psi(f, 1), 1);
    EXPECT_THROW(n_psi(f, 2), DegenerateQ);
    EXPECT_EQ(n_psi(f, 3), 1);
    EXPECT_THROW(psi_factorial(f, 3), DegenerateQ);
}

TEST(PsiFamily, Fibonacci)
{
    const auto f = PsiFamily::fibonacci();
    EXPECT_EQ(n_psi(f, 6), 8);
    EXPECT_EQ(psi_factorial(f, 5), 30);
    EXPECT_EQ(falling_psi(f, 4, 3), 6);
    EXPECT_EQ(psi_binomial(f, 4, 2), 6);
    EXPECT_EQ(psi_binomial(f, 7, 3), psi_binomial(f, 7, 4));
    for (std::size_t n = 1; n <= 60; ++n) {
        ASSERT_EQ(n_psi(f, n), Rational(oracle::fibonacci(n)));
    }
}

TEST(PsiFamily, CustomFamily)
{
    EXPECT_THROW(PsiFamily::custom({Rational(1), Rational(0), Rational(3)}), ZeroPsiValue);
    EXPECT_THROW(PsiFamily::custom({}), ZeroPsiValue);

    const auto f = PsiFamily::custom({Rational(1), make_rational(1, 2), Rational(3)});
    EXPECT_EQ(n_psi(f, 2), make_rational(1, 2));
    EXPECT_EQ(psi_factorial(f, 3), make_rational(3, 2));
    EXPECT_THROW(n_psi(f, 4), IndexError);
}

TEST(PsiFamily, LoadCustomText)
{
    std::istringstream good("1\n-2/4\n 7 \n\n");
    const auto f = load_custom_family(good);
    EXPECT_EQ(f.custom_size(), 3u);
    EXPECT_EQ(n_psi(f, 2), make_rational(-1, 2));

    std::istringstream zero("1\n0\n");
    EXPECT_THROW(load_custom_family(zero), ZeroPsiValue);
    std::istringstream junk("1\nabc\n");
    EXPECT_THROW(load_custom_family(junk), ParseError);
}

TEST(PsiFamily, MakeFamilySpec)
{
    EXPECT_EQ(make_family("classical").kind(), PsiFamily::Kind::classical);
    EXPECT_EQ(make_family("fibonacci").kind(), PsiFamily::Kind::fibonacci);
    EXPECT_EQ(make_family("q=2/3").q(), make_rational(2, 3));
    EXPECT_EQ(make_family("q=2/3").name(), "q=2/3");
    EXPECT_THROW(make_family("q=abc"), ParseError);
    EXPECT_THROW(make_family("nope"), ParseError);
    EXPECT_THROW(make_family("custom=/nonexistent/file.txt"), ParseError);
}

TEST(PsiFamily, IndexErrors)
{
    const auto f = PsiFamily::classical();
    EXPECT_THROW(falling_psi(f, 2, 3), IndexError);
    EXPECT_THROW(psi_binomial(f, 2, 3), IndexError);
    EXPECT_EQ(falling_psi(f, 7, 0), 1);
    EXPECT_EQ(psi_binomial(f, 7, 0), 1);
}

TEST(PsiFamilyProperty, FactorialRecurrence)
{
    for (const auto &f : oracle::preset_families()) {
        for (std::size_t n = 1; n <= 50; ++n) {
            ASSERT_EQ(psi_factorial(f, n), n_psi(f, n) * psi_factorial(f, n - 1)) << f.name() << " n=" << n;
        }
    }
}

TEST(PsiFamilyProperty, BinomialSymmetryAndFallingRatio)
{
    for (const auto &f : oracle::preset_families()) {
        for (std::size_t n = 0; n <= 30; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                const Rational b = psi_binomial(f, n, k);
                ASSERT_EQ(b, psi_binomial(f, n, n - k)) << f.name();
                ASSERT_EQ(b, psi_factorial(f, n) / (psi_factorial(f, k) * psi_factorial(f, n - k)));
            }
        }
    }
}

TEST(PsiFamilyProperty, FibonomialsAreIntegers)
{
    const auto f = PsiFamily::fibonacci();
    for (std::size_t n = 0; n <= 30; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            const Rational b = psi_binomial(f, n, k);
            ASSERT_EQ(b.get_den(), 1) << n << "," << k;
            ASSERT_EQ(b, oracle::fibonomial(n, k));
        }
    }
}

TEST(PsiFamilyProperty, PascalLikeConsistency)
{
    for (const auto &f : oracle::preset_families()) {
        for (std::size_t n = 0; n <= 20; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                for (std::size_t j = 0; j <= n - k; ++j) {
                    ASSERT_EQ(psi_binomial(f, n, k) * psi_binomial(f, n - k, j),
                              psi_binomial(f, n, k + j) * psi_binomial(f, k + j, j));
                }
            }
        }
    }
}

TEST(PsiFamilyConcurrency, SharedMemoIsTransparent)
{
    const auto shared = PsiFamily::fibonacci();
    std::vector<std::thread> threads;
    std::vector<Rational> results(8);
    for (std::size_t t = 0; t < results.size(); ++t) {
        threads.emplace_back([&, t] {
            Rational acc(0);
            // Interleave growing and shrinking requests so the memo is extended concurrently.
            for (std::size_t n = 0; n <= 200; ++n) {
                acc += psi_factorial(shared, (n * (t + 3)) % 201) / psi_factorial(shared, n / 2);
            }
            results[t] = acc;
        });
    }
    for (auto &th : threads) {
        th.join();
    }
    for (std::size_t t = 0; t < results.size(); ++t) {
        const auto fresh = PsiFamily::fibonacci();
        Rational acc(0);
        for (std::size_t n = 0; n <= 200; ++n) {
            acc += psi_factorial(fresh, (n * (t + 3)) % 201) / psi_factorial(fresh, n / 2);
        }
        EXPECT_EQ(results[t], acc);
    }
}

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <psi_opcalc/operator_series.hpp>
#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/rational.hpp>

namespace psi_opcalc
{

/// ψ-Appell family A_0(x)..A_N(x) generated by the Appell operator Â = S^{-1}
/// of a delta operator Q = ∂ψ S. A_n(x) = Â x^n and A_n = A_n(0).
struct AppellFamily {
    PsiFamily family;
    OperatorSeries delta;
    OperatorSeries appell_op;
    AppellNumbers numbers;
    std::vector<Polynomial> polys;

    std::size_t size() const noexcept
    {
        return polys.size();
    }
};

inline AppellFamily appell_family_from_delta(const OperatorSeries &q, const PsiFamily &family, std::size_t count)
{
    OperatorSeries a_hat = appell_operator(q, count);
    AppellNumbers numbers = appell_numbers_from(a_hat, family, count);
    std::vector<Polynomial> polys;
    polys.reserve(count + 1);
    for (std::size_t n = 0; n <= count; ++n) {
        polys.push_back(op_apply(a_hat, family, Polynomial::monomial(n)));
    }
    return AppellFamily{family, q, std::move(a_hat), std::move(numbers), std::move(polys)};
}

/// Bernoulli-Ward polynomials: the Appell family of Δψ.
inline AppellFamily bernoulli_ward(const PsiFamily &family, std::size_t count)
{
    return appell_family_from_delta(delta_psi(family, count + 1), family, count);
}

/// H_{n,ψ}(x) = [Σ_k (-1/2)^k ∂ψ^{2k} / kψ!] x^n. The denominator is kψ!.
inline Polynomial hermite_psi(const PsiFamily &family, std::size_t n)
{
    Polynomial acc;
    Polynomial term = Polynomial::monomial(n);
    Rational weight(1);
    for (std::size_t k = 0; !term.is_zero(); ++k) {
        if (k > 0) {
            weight *= Rational(-1, 2);
        }
        acc += term * Rational(weight / family.factorial(k));
        term = psi_derivative(family, psi_derivative(family, term));
    }
    return acc;
}

/// L_{n,ψ}(x) = (nψ/n) Σ_{k=1..n} (-1)^k C(n,k) (n-1)ψ^{(n-k) falling} (k/kψ) x^k,
/// with the ordinary binomial C(n,k).
inline Polynomial laguerre_psi(const PsiFamily &family, std::size_t n)
{
    if (n == 0) {
        throw IndexError("laguerre_psi needs n >= 1");
    }
    std::vector<Rational> c(n + 1);
    const Rational head = family.value(n) / Rational(static_cast<unsigned long>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        Rational t = Rational(binomial(n, k)) * falling_psi(family, n - 1, n - k)
                     * Rational(static_cast<unsigned long>(k)) / family.value(k);
        c[k] = (k % 2 == 1) ? Rational(-head * t) : Rational(head * t);
    }
    return Polynomial(std::move(c));
}

/// Classical closed form Σ_{k=1..n} (-1)^k (n!/k!) C(n-1, k-1) x^k.
inline Polynomial laguerre_q1_closed(std::size_t n)
{
    if (n == 0) {
        throw IndexError("laguerre_q1_closed needs n >= 1");
    }
    std::vector<Rational> c(n + 1);
    const Integer nf = factorial(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Rational t(Integer(nf * binomial(n - 1, k - 1)), factorial(k));
        t.canonicalize();
        c[k] = (k % 2 == 1) ? Rational(-t) : t;
    }
    return Polynomial(std::move(c));
}

struct BivariatePair {
    BivariatePolynomial lhs;
    BivariatePolynomial rhs;
};

/// Both sides of the ψ-Sheffer-Appell identity for A_n:
/// lhs = E^y(∂ψ) A_n(x) = Σ_k (y^k/kψ!) ∂ψ^k A_n(x),
/// rhs = Σ_s C(n,s)ψ A_s(y) x^(n-s).
inline BivariatePair sheffer_appell_check(const AppellFamily &fam, std::size_t n)
{
    if (n >= fam.size()) {
        throw IndexError("sheffer_appell_check: n=" + std::to_string(n) + " beyond family size");
    }
    const PsiFamily &psi = fam.family;
    BivariatePair out;
    Polynomial term = fam.polys[n];
    for (std::size_t k = 0; !term.is_zero(); ++k) {
        out.lhs.add_x_polynomial(term, k, Rational(1 / psi.factorial(k)));
        term = psi_derivative(psi, term);
    }
    for (std::size_t s = 0; s <= n; ++s) {
        out.rhs.add_y_polynomial(n - s, fam.polys[s], psi_binomial(psi, n, s));
    }
    return out;
}

/// Checks Σ z^n A_n(x)/nψ! = A(z) expψ(xz) coefficientwise for n <= count, by
/// multiplying the two truncated series in (x, z).
inline bool generating_function_check(const AppellFamily &fam, std::size_t count)
{
    if (count >= fam.size()) {
        throw IndexError("generating_function_check: count beyond family size");
    }
    const PsiFamily &psi = fam.family;
    BivariatePolynomial a_of_z, exp_xz; // keys are (x power, z power)
    for (std::size_t k = 0; k <= count; ++k) {
        const Rational inv = 1 / psi.factorial(k);
        a_of_z.add_term(0, k, Rational(fam.numbers.values[k] * inv));
        exp_xz.add_term(k, k, inv);
    }
    const BivariatePolynomial product = a_of_z * exp_xz;
    for (std::size_t n = 0; n <= count; ++n) {
        if (product.x_part(n) != fam.polys[n] * Rational(1 / psi.factorial(n))) {
            return false;
        }
    }
    return true;
}

} // namespace psi_opcalc

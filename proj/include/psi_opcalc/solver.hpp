#pragma once

#include <cstddef>
#include <vector>

#include <psi_opcalc/operator_series.hpp>
#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/psi_family.hpp>

namespace psi_opcalc
{

struct SolveResult {
    /// Canonical solution, i.e. the one with the Q-periodic part p set to 0.
    Polynomial solution;
    AppellNumbers appell_numbers_used;
    /// Q f - φ; zero for a correct solution.
    Polynomial residual;
};

/// [φ, ∂ψφ, ∂ψ²φ, ..., ∂ψ^upto φ].
inline std::vector<Polynomial> iterated_psi_derivatives(const PsiFamily &family, const Polynomial &phi,
                                                        std::size_t upto)
{
    std::vector<Polynomial> out;
    out.reserve(upto + 1);
    out.push_back(phi);
    for (std::size_t n = 1; n <= upto; ++n) {
        out.push_back(psi_derivative(family, out.back()));
    }
    return out;
}

/// Q f - φ.
inline Polynomial verify(const OperatorSeries &q, const PsiFamily &family, const Polynomial &f, const Polynomial &phi)
{
    return op_apply(q, family, f) - phi;
}

/// Solves Q(∂ψ) f = φ for polynomial φ:
///   f = Σ_{n=1..deg φ + 1} (A_n/nψ!) φ^(n-1) + A_0 ∫ψ φ.
/// A_0 = 1/q_1, which is 1 for the usual normalized delta operators.
inline SolveResult solve(const OperatorSeries &q, const PsiFamily &family, const Polynomial &phi)
{
    const std::size_t top = phi.is_zero() ? 1 : static_cast<std::size_t>(phi.degree()) + 1;
    const OperatorSeries a_hat = appell_operator(q, top);
    SolveResult out{{}, appell_numbers_from(a_hat, family, top), {}};

    const auto derivs = iterated_psi_derivatives(family, phi, top - 1);
    for (std::size_t n = 1; n <= top; ++n) {
        out.solution += derivs[n - 1] * a_hat.coefficient(n);
    }
    out.solution += psi_integral(family, phi) * a_hat.coefficient(0);
    out.residual = verify(q, family, out.solution, phi);
    return out;
}

} // namespace psi_opcalc

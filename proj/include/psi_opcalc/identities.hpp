#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <psi_opcalc/appell.hpp>
#include <psi_opcalc/operator_series.hpp>
#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/solver.hpp>

namespace psi_opcalc
{

struct IdentityResult {
    std::string name;
    bool passed = true;
    // First counterexample, when the identity fails.
    std::string detail;
};

inline IdentityResult passing(std::string name)
{
    return {std::move(name), true, {}};
}

/// ∂ψ A_n = nψ A_{n-1} for n = 1..N.
inline IdentityResult check_appell_relation(const AppellFamily &fam, const std::string &label)
{
    IdentityResult r = passing("d_psi A_n = n_psi A_(n-1) [" + label + "]");
    for (std::size_t n = 1; n < fam.size() && r.passed; ++n) {
        if (psi_derivative(fam.family, fam.polys[n]) != fam.polys[n - 1] * fam.family.value(n)) {
            r.passed = false;
            r.detail = "n=" + std::to_string(n);
        }
    }
    return r;
}

/// Q A_n = nψ x^(n-1) for n = 0..N.
inline IdentityResult check_difference_equation(const AppellFamily &fam, const std::string &label)
{
    IdentityResult r = passing("Q A_n = n_psi x^(n-1) [" + label + "]");
    for (std::size_t n = 0; n < fam.size() && r.passed; ++n) {
        const Polynomial expected = n == 0 ? Polynomial{} : Polynomial::monomial(n - 1, fam.family.value(n));
        if (op_apply(fam.delta, fam.family, fam.polys[n]) != expected) {
            r.passed = false;
            r.detail = "n=" + std::to_string(n);
        }
    }
    return r;
}

inline IdentityResult check_sheffer_appell(const AppellFamily &fam, const std::string &label)
{
    IdentityResult r = passing("Sheffer-Appell identity [" + label + "]");
    for (std::size_t n = 0; n < fam.size() && r.passed; ++n) {
        const auto sides = sheffer_appell_check(fam, n);
        if (sides.lhs != sides.rhs) {
            r.passed = false;
            r.detail = "n=" + std::to_string(n) + ": " + to_string(sides.lhs) + " vs " + to_string(sides.rhs);
        }
    }
    return r;
}

inline IdentityResult check_generating_function(const AppellFamily &fam, const std::string &label)
{
    IdentityResult r = passing("generating function A(z) exp_psi(xz) [" + label + "]");
    r.passed = generating_function_check(fam, fam.size() - 1);
    return r;
}

/// S Â = I to the family's order.
inline IdentityResult check_inverse_certificate(const AppellFamily &fam, const std::string &label)
{
    IdentityResult r = passing("S * A_hat = I [" + label + "]");
    const std::size_t order = fam.size() - 1;
    const auto product = op_mul(delta_factorize(fam.delta).s, fam.appell_op, order);
    r.passed = agree_up_to(product, OperatorSeries::identity(), order);
    return r;
}

/// Runs every identity the library guarantees, at degree <= max_degree.
inline std::vector<IdentityResult> run_identity_suite(const PsiFamily &family, std::size_t max_degree)
{
    std::vector<IdentityResult> out;
    const auto record = [&out](IdentityResult r) { out.push_back(std::move(r)); };

    {
        IdentityResult r = passing("n_psi! = n_psi (n-1)_psi!");
        for (std::size_t n = 1; n <= max_degree && r.passed; ++n) {
            if (family.factorial(n) != family.value(n) * family.factorial(n - 1)) {
                r = {r.name, false, "n=" + std::to_string(n)};
            }
        }
        record(r);
    }
    {
        IdentityResult r = passing("psi-binomial symmetry");
        for (std::size_t n = 0; n <= max_degree && r.passed; ++n) {
            for (std::size_t k = 0; k <= n && r.passed; ++k) {
                if (psi_binomial(family, n, k) != psi_binomial(family, n, n - k)) {
                    r = {r.name, false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
                }
            }
        }
        record(r);
    }
    {
        IdentityResult a = passing("d_psi . int_psi = id");
        IdentityResult b = passing("int_psi . d_psi = id (no constant term)");
        IdentityResult c = passing("d_psi = n_hat_psi . d_0");
        for (std::size_t n = 0; n <= max_degree; ++n) {
            const auto xn = Polynomial::monomial(n);
            if (a.passed && psi_derivative(family, psi_integral(family, xn)) != xn) {
                a = {a.name, false, "x^" + std::to_string(n)};
            }
            if (b.passed && n > 0 && psi_integral(family, psi_derivative(family, xn)) != xn) {
                b = {b.name, false, "x^" + std::to_string(n)};
            }
            if (c.passed && psi_derivative(family, xn) != n_hat_psi(family, divided_difference(xn))) {
                c = {c.name, false, "x^" + std::to_string(n)};
            }
        }
        record(a);
        record(b);
        record(c);
    }

    const struct {
        const char *label;
        OperatorSeries q;
    } operators[] = {{"deriv", OperatorSeries::derivative()}, {"delta_psi", delta_psi(family, max_degree + 1)}};

    for (const auto &[label, q] : operators) {
        const auto fam = appell_family_from_delta(q, family, max_degree);
        record(check_appell_relation(fam, label));
        record(check_difference_equation(fam, label));
        record(check_sheffer_appell(fam, label));
        record(check_generating_function(fam, label));
        record(check_inverse_certificate(fam, label));

        IdentityResult r = passing(std::string("solver residual Q f - phi = 0 [") + label + "]");
        Polynomial mixed;
        for (std::size_t n = 0; n <= max_degree && r.passed; ++n) {
            const auto xn = Polynomial::monomial(n);
            mixed += xn * make_rational(static_cast<long>(n % 3) - 1, static_cast<long>(n + 1));
            for (const auto &phi : {xn, mixed}) {
                if (!solve(q, family, phi).residual.is_zero()) {
                    r = {r.name, false, "phi=" + to_string(phi)};
                    break;
                }
            }
        }
        record(r);
    }
    return out;
}

} // namespace psi_opcalc

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/rational.hpp>

namespace psi_opcalc
{

/// A formal series Σ c_k ∂ψ^k, stored by its raw coefficients c_k (the scaled
/// coefficient is kψ! c_k).
///
/// Three flavours share this type:
///  - finite: a polynomial in ∂ψ; every coefficient past the stored ones is 0.
///  - generated: coefficients come from a closed rule and extend on demand.
///  - truncated: only c_0..c_order are known; asking for more is an error.
/// Applying any of them to a polynomial of degree d only needs c_0..c_d.
class OperatorSeries
{
public:
    using Generator = std::function<Rational(std::size_t)>;

    /// The identity operator.
    OperatorSeries() : OperatorSeries(std::vector<Rational>{Rational(1)}) {}

    static OperatorSeries finite(std::vector<Rational> coeffs)
    {
        return OperatorSeries(std::move(coeffs));
    }

    static OperatorSeries truncated(std::vector<Rational> coeffs)
    {
        OperatorSeries s;
        s.coeffs_ = std::move(coeffs);
        s.finite_ = false;
        return s;
    }

    /// Materializes c_0..c_order from `rule`; later coefficients are produced on demand.
    static OperatorSeries generated(Generator rule, std::size_t order)
    {
        OperatorSeries s;
        s.coeffs_.clear();
        s.coeffs_.reserve(order + 1);
        for (std::size_t k = 0; k <= order; ++k) {
            s.coeffs_.push_back(rule(k));
        }
        s.finite_ = false;
        s.rule_ = std::move(rule);
        return s;
    }

    static OperatorSeries identity()
    {
        return {};
    }

    /// ∂ψ itself: raw coefficients [0, 1].
    static OperatorSeries derivative()
    {
        return finite({Rational(0), Rational(1)});
    }

    const std::vector<Rational> &coeffs() const noexcept
    {
        return coeffs_;
    }

    bool is_finite() const noexcept
    {
        return finite_;
    }

    bool has_rule() const noexcept
    {
        return static_cast<bool>(rule_);
    }

    /// Highest index whose coefficient is stored.
    std::size_t truncation_order() const noexcept
    {
        return coeffs_.empty() ? 0 : coeffs_.size() - 1;
    }

    /// Largest k for which coefficient(k) can be answered; nullopt means unbounded.
    std::optional<std::size_t> known_order() const noexcept
    {
        if (finite_ || rule_) {
            return std::nullopt;
        }
        return truncation_order();
    }

    Rational coefficient(std::size_t k) const
    {
        if (k < coeffs_.size()) {
            return coeffs_[k];
        }
        if (finite_) {
            return Rational(0);
        }
        if (rule_) {
            return rule_(k);
        }
        throw TruncationTooShort("operator series known only to order " + std::to_string(truncation_order())
                                 + ", coefficient " + std::to_string(k) + " requested");
    }

    /// Exactly equal stored data and flavour (rules are not compared).
    friend bool operator==(const OperatorSeries &a, const OperatorSeries &b)
    {
        return a.finite_ == b.finite_ && a.coeffs_ == b.coeffs_;
    }

private:
    explicit OperatorSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
    bool finite_ = true;
    Generator rule_;
};

/// True iff c_0..c_order of both series agree.
inline bool agree_up_to(const OperatorSeries &a, const OperatorSeries &b, std::size_t order)
{
    for (std::size_t k = 0; k <= order; ++k) {
        if (a.coefficient(k) != b.coefficient(k)) {
            return false;
        }
    }
    return true;
}

/// Σ_k c_k ∂ψ^k p. Throws TruncationTooShort when p's degree exceeds what the
/// series knows.
inline Polynomial op_apply(const OperatorSeries &op, const PsiFamily &family, const Polynomial &p)
{
    Polynomial acc;
    Polynomial term = p;
    for (std::size_t k = 0; !term.is_zero(); ++k) {
        const Rational c = op.coefficient(k);
        if (c != 0) {
            acc += term * c;
        }
        term = psi_derivative(family, term);
    }
    return acc;
}

/// Cauchy product truncated at `order`. The result stays finite when both
/// factors are finite and the full product fits.
inline OperatorSeries op_mul(const OperatorSeries &a, const OperatorSeries &b, std::size_t order)
{
    const bool exact = a.is_finite() && b.is_finite()
                       && (a.coeffs().empty() || b.coeffs().empty()
                           || a.coeffs().size() + b.coeffs().size() - 2 <= order);
    std::vector<Rational> out(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational x = a.coefficient(j);
            if (x != 0) {
                out[n] += x * b.coefficient(n - j);
            }
        }
    }
    return exact ? OperatorSeries::finite(std::move(out)) : OperatorSeries::truncated(std::move(out));
}

/// Multiplicative inverse to `order` by forward substitution:
/// b_0 = 1/s_0, b_k = -(1/s_0) Σ_{j=1..k} s_j b_{k-j}.
inline OperatorSeries op_invert(const OperatorSeries &s, std::size_t order)
{
    const Rational s0 = s.coefficient(0);
    if (s0 == 0) {
        throw NotInvertible("operator series with zero constant term is not invertible");
    }
    std::vector<Rational> sc(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
        sc[k] = s.coefficient(k);
    }
    std::vector<Rational> b(order + 1);
    b[0] = 1 / s0;
    for (std::size_t k = 1; k <= order; ++k) {
        Rational acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            if (sc[j] != 0) {
                acc += sc[j] * b[k - j];
            }
        }
        b[k] = -acc / s0;
    }
    return OperatorSeries::truncated(std::move(b));
}

struct DeltaFactorization {
    OperatorSeries q;
    OperatorSeries s;
};

/// Q = ∂ψ S. Needs c_0 = 0 and c_1 != 0; S's raw coefficients are Q's shifted down by one.
inline DeltaFactorization delta_factorize(const OperatorSeries &q)
{
    if (q.coefficient(0) != 0) {
        throw NotDeltaOperator("delta operator must have zero constant term");
    }
    if (q.coefficient(1) == 0) {
        throw NotDeltaOperator("delta operator must have nonzero linear term");
    }
    std::vector<Rational> shifted;
    if (q.coeffs().size() > 1) {
        shifted.assign(q.coeffs().begin() + 1, q.coeffs().end());
    }
    if (q.has_rule()) {
        return {q, OperatorSeries::generated([q](std::size_t k) { return q.coefficient(k + 1); },
                                             shifted.empty() ? 0 : shifted.size() - 1)};
    }
    if (q.is_finite()) {
        return {q, OperatorSeries::finite(std::move(shifted))};
    }
    return {q, OperatorSeries::truncated(std::move(shifted))};
}

/// Â = S^{-1} for Q = ∂ψ S, to the given order.
inline OperatorSeries appell_operator(const OperatorSeries &q, std::size_t order)
{
    return op_invert(delta_factorize(q).s, order);
}

struct AppellNumbers {
    PsiFamily family;
    std::vector<Rational> values;
};

/// A_n = nψ! c_n for n = 0..count.
inline AppellNumbers appell_numbers_from(const OperatorSeries &op, const PsiFamily &family, std::size_t count)
{
    if (op.coefficient(0) == 0) {
        throw NotInvertible("Appell numbers need a nonzero constant term");
    }
    AppellNumbers out{family, {}};
    out.values.reserve(count + 1);
    for (std::size_t n = 0; n <= count; ++n) {
        out.values.push_back(family.factorial(n) * op.coefficient(n));
    }
    return out;
}

/// E^a(∂ψ) = Σ a^n/nψ! ∂ψ^n.
inline OperatorSeries translation(const PsiFamily &family, const Rational &a, std::size_t order)
{
    if (a == 0) {
        return OperatorSeries::identity();
    }
    return OperatorSeries::generated(
        [family, a](std::size_t n) {
            Rational p(1);
            for (std::size_t i = 0; i < n; ++i) {
                p *= a;
            }
            return Rational(p / family.factorial(n));
        },
        order);
}

/// Δψ = E^1(∂ψ) - I: raw coefficients 0, 1/1ψ!, 1/2ψ!, ...
inline OperatorSeries delta_psi(const PsiFamily &family, std::size_t order = 1)
{
    return OperatorSeries::generated(
        [family](std::size_t k) { return k == 0 ? Rational(0) : Rational(1 / family.factorial(k)); },
        std::max<std::size_t>(order, 1));
}

/// Reads "deriv", "delta_psi", "custom:<file>" or an inline raw coefficient
/// list such as "0, 1, 1/2".
inline OperatorSeries make_operator(std::string_view spec, const PsiFamily &family)
{
    const auto s = detail::trim(spec);
    if (s == "deriv") {
        return OperatorSeries::derivative();
    }
    if (s == "delta_psi") {
        return delta_psi(family);
    }
    if (s.starts_with("custom:")) {
        const std::string path(s.substr(7));
        std::ifstream in(path);
        if (!in) {
            throw ParseError("cannot open operator file '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return OperatorSeries::finite(parse_rational_list(buf.str()));
    }
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '-')) {
        return OperatorSeries::finite(parse_rational_list(s));
    }
    throw ParseError("unknown operator '" + std::string(spec) + "' (expected deriv, delta_psi, custom:<file> or a coefficient list)");
}

} // namespace psi_opcalc

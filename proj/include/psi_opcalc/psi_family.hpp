#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <psi_opcalc/rational.hpp>

namespace psi_opcalc
{

/// An admissible ψ-sequence, exposed through its upside-down values nψ = ψ_{n-1}/ψ_n.
///
/// Instances are cheap to copy and share a memo of computed values. The memo is
/// guarded by a mutex, so a family can be used from several threads at once.
/// Admissibility (nψ != 0) is checked lazily for the preset kinds, at the first
/// index that is actually touched.
class PsiFamily
{
public:
    enum class Kind { classical, q_gauss, fibonacci, custom };

    static PsiFamily classical()
    {
        return PsiFamily(Kind::classical, Rational(1), {});
    }

    /// nψ = (1 - q^n)/(1 - q); q = 1 gives the classical values.
    static PsiFamily q_gauss(Rational q)
    {
        return PsiFamily(Kind::q_gauss, std::move(q), {});
    }

    /// nψ = F_n with F_1 = F_2 = 1.
    static PsiFamily fibonacci()
    {
        return PsiFamily(Kind::fibonacci, Rational(1), {});
    }

    /// values[n-1] holds nψ. Throws ZeroPsiValue on any zero entry.
    static PsiFamily custom(std::vector<Rational> values)
    {
        if (values.empty()) {
            throw ZeroPsiValue("custom psi-family needs at least one value");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0) {
                throw ZeroPsiValue("custom psi-family value n=" + std::to_string(i + 1) + " is zero");
            }
        }
        return PsiFamily(Kind::custom, Rational(1), std::move(values));
    }

    Kind kind() const noexcept
    {
        return state_->kind;
    }

    /// Only meaningful for Kind::q_gauss.
    const Rational &q() const noexcept
    {
        return state_->q;
    }

    /// Number of values a custom family defines; zero for the unbounded presets.
    std::size_t custom_size() const noexcept
    {
        return state_->custom.size();
    }

    std::string name() const
    {
        switch (state_->kind) {
            case Kind::classical:
                return "classical";
            case Kind::q_gauss:
                return "q=" + to_string(state_->q);
            case Kind::fibonacci:
                return "fibonacci";
            case Kind::custom:
                break;
        }
        return "custom";
    }

    /// nψ. 0ψ is 0 by convention and is never used as a divisor.
    Rational value(std::size_t n) const
    {
        if (n == 0) {
            return Rational(0);
        }
        std::lock_guard lock(state_->mutex);
        extend(n);
        const Rational &v = state_->values[n];
        if (v == 0) {
            throw DegenerateQ("n_psi vanishes at n=" + std::to_string(n) + " for " + name());
        }
        return v;
    }

    /// nψ! = nψ (n-1)ψ!, 0ψ! = 1.
    Rational factorial(std::size_t n) const
    {
        std::lock_guard lock(state_->mutex);
        extend(n);
        auto &facts = state_->factorials;
        while (facts.size() <= n) {
            const std::size_t k = facts.size();
            const Rational &v = state_->values[k];
            if (v == 0) {
                throw DegenerateQ("n_psi vanishes at n=" + std::to_string(k) + " for " + name());
            }
            facts.push_back(facts.back() * v);
        }
        return facts[n];
    }

private:
    struct State {
        Kind kind;
        Rational q;
        std::vector<Rational> custom;
        std::mutex mutex;
        // values[0] = 0ψ = 0; factorials[0] = 1.
        std::vector<Rational> values{Rational(0)};
        std::vector<Rational> factorials{Rational(1)};
    };

    PsiFamily(Kind kind, Rational q, std::vector<Rational> custom) : state_(std::make_shared<State>())
    {
        state_->kind = kind;
        state_->q = std::move(q);
        state_->custom = std::move(custom);
    }

    // Caller holds the mutex.
    void extend(std::size_t n) const
    {
        auto &vals = state_->values;
        if (state_->kind == Kind::custom && n > state_->custom.size()) {
            throw IndexError("custom psi-family defines n_psi only up to n=" + std::to_string(state_->custom.size())
                             + ", requested n=" + std::to_string(n));
        }
        while (vals.size() <= n) {
            const std::size_t k = vals.size();
            switch (state_->kind) {
                case Kind::classical:
                    vals.emplace_back(static_cast<unsigned long>(k));
                    break;
                case Kind::q_gauss:
                    // [k]_q = 1 + q [k-1]_q
                    vals.push_back(1 + state_->q * vals[k - 1]);
                    break;
                case Kind::fibonacci:
                    vals.push_back(k == 1 ? Rational(1) : Rational(vals[k - 1] + vals[k - 2]));
                    break;
                case Kind::custom:
                    vals.push_back(state_->custom[k - 1]);
                    break;
            }
        }
    }

    std::shared_ptr<State> state_;
};

inline Rational n_psi(const PsiFamily &family, std::size_t n)
{
    return family.value(n);
}

inline Rational psi_factorial(const PsiFamily &family, std::size_t n)
{
    return family.factorial(n);
}

/// nψ (n-1)ψ ... (n-k+1)ψ; 1 for k = 0.
inline Rational falling_psi(const PsiFamily &family, std::size_t n, std::size_t k)
{
    if (k > n) {
        throw IndexError("falling_psi: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    }
    Rational r(1);
    for (std::size_t i = 0; i < k; ++i) {
        r *= family.value(n - i);
    }
    return r;
}

inline Rational psi_binomial(const PsiFamily &family, std::size_t n, std::size_t k)
{
    if (k > n) {
        throw IndexError("psi_binomial: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    }
    return falling_psi(family, n, k) / family.factorial(k);
}

/// One exact rational per line; line n holds nψ. Trailing blank lines are ignored.
inline PsiFamily load_custom_family(std::istream &in)
{
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    while (!lines.empty() && detail::trim(lines.back()).empty()) {
        lines.pop_back();
    }
    std::vector<Rational> values;
    values.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            values.push_back(parse_rational(lines[i]));
        } catch (const ParseError &e) {
            throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return PsiFamily::custom(std::move(values));
}

inline PsiFamily load_custom_family(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open psi-family file '" + path.string() + "'");
    }
    return load_custom_family(in);
}

/// Parses "classical", "fibonacci", "q=<rational>" or "custom=<path>".
inline PsiFamily make_family(std::string_view spec)
{
    const auto s = detail::trim(spec);
    if (s == "classical") {
        return PsiFamily::classical();
    }
    if (s == "fibonacci") {
        return PsiFamily::fibonacci();
    }
    if (s.starts_with("q=")) {
        return PsiFamily::q_gauss(parse_rational(s.substr(2)));
    }
    if (s.starts_with("custom=")) {
        return load_custom_family(std::filesystem::path(std::string(s.substr(7))));
    }
    throw ParseError("unknown psi-family '" + std::string(spec) + "' (expected classical, fibonacci, q=<p/q> or custom=<path>)");
}

} // namespace psi_opcalc

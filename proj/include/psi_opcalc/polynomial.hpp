#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/rational.hpp>

namespace psi_opcalc
{

/// Dense univariate polynomial with exact rational coefficients, index k holding
/// the coefficient of x^k. Always kept in normal form: no trailing zeros, and the
/// zero polynomial has no coefficients at all.
class Polynomial
{
public:
    /// Degree of the zero polynomial.
    static constexpr long minus_infinity = -1;

    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
    {
        normalize();
    }

    static Polynomial constant(Rational c)
    {
        return Polynomial(std::vector<Rational>{std::move(c)});
    }

    static Polynomial monomial(std::size_t n, Rational c = Rational(1))
    {
        std::vector<Rational> v(n + 1);
        v[n] = std::move(c);
        return Polynomial(std::move(v));
    }

    const std::vector<Rational> &coeffs() const noexcept
    {
        return coeffs_;
    }

    long degree() const noexcept
    {
        return static_cast<long>(coeffs_.size()) - 1;
    }

    bool is_zero() const noexcept
    {
        return coeffs_.empty();
    }

    Rational coefficient(std::size_t k) const
    {
        return k < coeffs_.size() ? coeffs_[k] : Rational(0);
    }

    Rational leading_coefficient() const
    {
        return coeffs_.empty() ? Rational(0) : coeffs_.back();
    }

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    Polynomial &operator+=(const Polynomial &o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
            coeffs_[k] += o.coeffs_[k];
        }
        normalize();
        return *this;
    }

    Polynomial &operator-=(const Polynomial &o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
            coeffs_[k] -= o.coeffs_[k];
        }
        normalize();
        return *this;
    }

    Polynomial &operator*=(const Rational &c)
    {
        for (auto &a : coeffs_) {
            a *= c;
        }
        normalize();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }

    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        return a -= b;
    }

    friend Polynomial operator-(Polynomial a)
    {
        for (auto &c : a.coeffs_) {
            c = -c;
        }
        return a;
    }

    friend Polynomial operator*(Polynomial p, const Rational &c)
    {
        return p *= c;
    }

    friend Polynomial operator*(const Rational &c, Polynomial p)
    {
        return p *= c;
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(out));
    }

    /// Horner evaluation.
    Rational operator()(const Rational &x0) const
    {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x0 + *it;
        }
        return acc;
    }

private:
    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

inline Polynomial poly_add(const Polynomial &a, const Polynomial &b)
{
    return a + b;
}

inline Polynomial poly_mul(const Polynomial &a, const Polynomial &b)
{
    return a * b;
}

inline Polynomial poly_scale(const Polynomial &p, const Rational &c)
{
    return p * c;
}

inline Rational evaluate(const Polynomial &p, const Rational &x0)
{
    return p(x0);
}

// ---------------------------------------------------------------------------
// Basic ψ-operators on polynomials. All are linear and act monomial-wise.

/// ∂ψ: x^n -> nψ x^(n-1), constants -> 0.
inline Polynomial psi_derivative(const PsiFamily &family, const Polynomial &p)
{
    const auto &c = p.coeffs();
    if (c.size() <= 1) {
        return {};
    }
    std::vector<Rational> out(c.size() - 1);
    for (std::size_t n = 1; n < c.size(); ++n) {
        if (c[n] != 0) {
            out[n - 1] = c[n] * family.value(n);
        }
    }
    return Polynomial(std::move(out));
}

/// ∂0: x^n -> x^(n-1), the q = 0 Jackson derivative.
inline Polynomial divided_difference(const Polynomial &p)
{
    const auto &c = p.coeffs();
    if (c.size() <= 1) {
        return {};
    }
    return Polynomial(std::vector<Rational>(c.begin() + 1, c.end()));
}

/// n̂ψ: x^k -> (k+1)ψ x^k.
inline Polynomial n_hat_psi(const PsiFamily &family, const Polynomial &p)
{
    std::vector<Rational> out = p.coeffs();
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k] != 0) {
            out[k] *= family.value(k + 1);
        }
    }
    return Polynomial(std::move(out));
}

/// ∫ψ: x^n -> x^(n+1)/(n+1)ψ, zero integration constant.
inline Polynomial psi_integral(const PsiFamily &family, const Polynomial &p)
{
    const auto &c = p.coeffs();
    if (c.empty()) {
        return {};
    }
    std::vector<Rational> out(c.size() + 1);
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] != 0) {
            out[n + 1] = c[n] / family.value(n + 1);
        }
    }
    return Polynomial(std::move(out));
}

/// x̂ψ: x^n -> ((n+1)/(n+1)ψ) x^(n+1).
inline Polynomial x_hat_psi(const PsiFamily &family, const Polynomial &p)
{
    const auto &c = p.coeffs();
    if (c.empty()) {
        return {};
    }
    std::vector<Rational> out(c.size() + 1);
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] != 0) {
            out[n + 1] = c[n] * static_cast<unsigned long>(n + 1) / family.value(n + 1);
        }
    }
    return Polynomial(std::move(out));
}

// ---------------------------------------------------------------------------

/// Sparse polynomial in x and y; the key (i, j) stands for x^i y^j.
class BivariatePolynomial
{
public:
    using Key = std::pair<std::size_t, std::size_t>;

    void add_term(std::size_t i, std::size_t j, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Adds p(x) * y^j.
    void add_x_polynomial(const Polynomial &p, std::size_t j, const Rational &scale = Rational(1))
    {
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
            add_term(i, j, p.coeffs()[i] * scale);
        }
    }

    /// Adds x^i * p(y).
    void add_y_polynomial(std::size_t i, const Polynomial &p, const Rational &scale = Rational(1))
    {
        for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
            add_term(i, j, p.coeffs()[j] * scale);
        }
    }

    Rational coefficient(std::size_t i, std::size_t j) const
    {
        const auto it = terms_.find(Key{i, j});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<Key, Rational> &terms() const noexcept
    {
        return terms_;
    }

    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    /// Collects the coefficient of y^j as a polynomial in x.
    Polynomial x_part(std::size_t j) const
    {
        std::vector<Rational> out;
        for (const auto &[key, c] : terms_) {
            if (key.second == j) {
                if (out.size() <= key.first) {
                    out.resize(key.first + 1);
                }
                out[key.first] = c;
            }
        }
        return Polynomial(std::move(out));
    }

    friend bool operator==(const BivariatePolynomial &, const BivariatePolynomial &) = default;

    friend BivariatePolynomial operator*(const BivariatePolynomial &a, const BivariatePolynomial &b)
    {
        BivariatePolynomial out;
        for (const auto &[ka, ca] : a.terms_) {
            for (const auto &[kb, cb] : b.terms_) {
                out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return out;
    }

private:
    std::map<Key, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Text formats.

namespace detail
{

inline void append_term(std::string &out, const Rational &c, const std::string &monomial)
{
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
        if (negative) {
            out += "-";
        }
    } else {
        out += negative ? " - " : " + ";
    }
    if (monomial.empty()) {
        out += to_string(mag);
    } else if (mag == 1) {
        out += monomial;
    } else if (mag.get_den() == 1) {
        out += to_string(mag) + monomial;
    } else {
        out += "(" + to_string(mag) + ")" + monomial;
    }
}

inline std::string power(char var, std::size_t k)
{
    if (k == 0) {
        return {};
    }
    return k == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(k);
}

} // namespace detail

/// Human-readable form, highest power first, e.g. "x^2 - x + (1/6)" style:
/// non-integer coefficients of non-constant terms are parenthesized.
inline std::string to_string(const Polynomial &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    const auto &c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] != 0) {
            detail::append_term(out, c[k], detail::power('x', k));
        }
    }
    return out;
}

inline std::string to_string(const BivariatePolynomial &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto [i, j] = it->first;
        std::string mono = detail::power('x', i);
        if (j > 0) {
            mono += detail::power('y', j);
        }
        detail::append_term(out, it->second, mono);
    }
    return out;
}

/// Coefficient list, low to high, as exact rational strings.
inline std::vector<std::string> coefficient_strings(const Polynomial &p)
{
    std::vector<std::string> out;
    out.reserve(p.coeffs().size());
    for (const auto &c : p.coeffs()) {
        out.push_back(to_string(c));
    }
    return out;
}

namespace detail
{

// Recursive-descent reader for "x^2 - x + 1/6", "(3/2)x^2", "2*x", "x^3/3".
class PolynomialReader
{
public:
    explicit PolynomialReader(std::string_view text) : text_(text) {}

    Polynomial read()
    {
        Polynomial acc;
        skip_ws();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = get() == '-';
        }
        acc += term(negative);
        for (skip_ws(); pos_ < text_.size(); skip_ws()) {
            const char op = get();
            if (op != '+' && op != '-') {
                fail("expected '+' or '-'");
            }
            acc += term(op == '-');
        }
        return acc;
    }

private:
    Polynomial term(bool negative)
    {
        skip_ws();
        Rational coeff(1);
        bool have_coeff = false;
        if (peek() == '(') {
            get();
            coeff = rational_literal();
            skip_ws();
            if (get() != ')') {
                fail("expected ')'");
            }
            have_coeff = true;
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = rational_literal();
            have_coeff = true;
        }
        skip_ws();
        if (have_coeff && peek() == '*') {
            get();
            skip_ws();
            if (peek() != 'x') {
                fail("expected 'x' after '*'");
            }
        }
        std::size_t exponent = 0;
        bool have_x = false;
        if (peek() == 'x') {
            get();
            have_x = true;
            exponent = 1;
            skip_ws();
            if (peek() == '^') {
                get();
                skip_ws();
                exponent = unsigned_literal();
            }
            skip_ws();
            if (peek() == '/') {
                get();
                skip_ws();
                const Integer d(std::to_string(unsigned_literal()));
                if (d == 0) {
                    fail("division by zero");
                }
                coeff /= Rational(d);
            }
        }
        if (!have_coeff && !have_x) {
            fail("expected a term");
        }
        return Polynomial::monomial(exponent, negative ? Rational(-coeff) : coeff);
    }

    Rational rational_literal()
    {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') {
            get();
        }
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        std::size_t end = pos_;
        // Only treat '/' as part of the literal when digits follow.
        if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            get();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                get();
            }
            end = pos_;
        }
        try {
            return parse_rational(text_.substr(start, end - start));
        } catch (const ParseError &) {
            fail("bad rational literal");
        }
    }

    std::size_t unsigned_literal()
    {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        if (start == pos_ || pos_ - start > 9) {
            fail("expected a small nonnegative integer");
        }
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }

    char peek() const
    {
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char get()
    {
        return pos_ < text_.size() ? text_[pos_++] : '\0';
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError("polynomial '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Comma/whitespace separated exact rationals, low to high.
inline std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::string item;
    std::istringstream in{std::string(text)};
    // Accept both commas and newlines as separators.
    for (std::string line; std::getline(in, line);) {
        std::istringstream fields(line);
        while (std::getline(fields, item, ',')) {
            const auto t = detail::trim(item);
            if (!t.empty()) {
                out.push_back(parse_rational(t));
            }
        }
    }
    return out;
}

/// Reads either a coefficient list ("0, -1, 1" is x^2 - x) or the compact
/// expression syntax ("x^2 - x + 1/6").
inline Polynomial parse_polynomial(std::string_view text)
{
    if (text.find('x') == std::string_view::npos) {
        if (detail::trim(text).empty()) {
            throw ParseError("empty polynomial");
        }
        return Polynomial(parse_rational_list(text));
    }
    return detail::PolynomialReader(text).read();
}

} // namespace psi_opcalc

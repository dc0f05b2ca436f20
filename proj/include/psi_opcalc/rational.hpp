#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace psi_opcalc
{

// Exact rationals. Every value that leaves this library is canonical
// (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A custom ψ-family contains a zero value.
class ZeroPsiValue : public Error
{
public:
    using Error::Error;
};

/// q^n = 1 for a requested n, which makes n_q vanish.
class DegenerateQ : public Error
{
public:
    using Error::Error;
};

class IndexError : public Error
{
public:
    using Error::Error;
};

class NotInvertible : public Error
{
public:
    using Error::Error;
};

class NotDeltaOperator : public Error
{
public:
    using Error::Error;
};

class TruncationTooShort : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    using Error::Error;
};

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Parses "p/q" or an integer literal, surrounding whitespace allowed.
inline Rational parse_rational(std::string_view text)
{
    const auto s = detail::trim(text);
    const auto slash = s.find('/');
    const auto num = detail::trim(s.substr(0, slash));
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : detail::trim(s.substr(slash + 1));
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den)) {
        throw ParseError("not an exact rational: '" + std::string(text) + "'");
    }
    const auto strip_plus = [](std::string_view v) {
        return std::string(!v.empty() && v.front() == '+' ? v.substr(1) : v);
    };
    const Integer n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// num/den in lowest terms.
inline Rational make_rational(long num, long den = 1)
{
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

/// Ordinary binomial coefficient C(n, k); zero when k > n.
inline Integer binomial(std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(std::size_t n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace psi_opcalc

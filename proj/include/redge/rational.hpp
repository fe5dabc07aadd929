// Exact rational arithmetic used throughout the library.
//
// All expectations, traversal probabilities, flows, and bound values are
// boost::multiprecision::cpp_rational: arbitrary precision, always stored in
// lowest terms with positive denominator, exact +,-,*,/ and comparisons.
// No floating point participates in any core computation; decimal strings are
// renderings only.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace redge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Builds p/q from machine integers. q must be nonzero.
inline Rational rational(long long p, long long q = 1) {
    if (q == 0) throw std::invalid_argument("rational: zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Rational(BigInt(p), BigInt(q));
}

/// Renders a rational as "p/q", or just "p" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    std::string s = num.str();
    if (den != 1) {
        s += '/';
        s += den.str();
    }
    return s;
}

/// Parses "p", "-p", "p/q" (optional sign on the numerator). Returns nullopt
/// on malformed input or zero denominator.
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    const std::string den_part =
        slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
    auto is_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!is_int(num_part, true) || !is_int(den_part, false)) return std::nullopt;
    BigInt num(num_part[0] == '+' ? num_part.substr(1) : num_part);
    BigInt den(den_part);
    if (den == 0) return std::nullopt;
    return Rational(num, den);
}

/// Renders a rational in fixed-point decimal with `digits` fractional places,
/// rounding half to even. Used for report output only.
inline std::string to_decimal_string(const Rational& r, unsigned digits = 6) {
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const bool negative = r < 0;
    const Rational mag = negative ? Rational(-r) : r;
    const BigInt num = boost::multiprecision::numerator(mag) * scale;
    const BigInt den = boost::multiprecision::denominator(mag);
    BigInt q = num / den;
    const BigInt rem = num % den;
    const BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) ++q;
    const BigInt whole = q / scale;
    const BigInt frac = q % scale;
    std::string frac_str = frac.str();
    if (frac_str.size() < digits)
        frac_str.insert(0, digits - frac_str.size(), '0');
    std::string out;
    if (negative && (whole != 0 || frac != 0)) out += '-';
    out += whole.str();
    if (digits > 0) {
        out += '.';
        out += frac_str;
    }
    return out;
}

}  // namespace redge

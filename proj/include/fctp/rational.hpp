#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "fctp/errors.hpp"

namespace fctp {

// Exact arbitrary-precision rational. All cost and feasibility arithmetic in
// this library goes through this type; there is no floating-point path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Node/arc capacities and integer flows are machine integers.
using Cap = std::int64_t;

inline Cap checked_add(Cap a, Cap b) {
    Cap r = 0;
    if (__builtin_add_overflow(a, b, &r)) raise(Errc::validation_error, "capacity addition overflow");
    return r;
}

inline Cap checked_mul(Cap a, Cap b) {
    Cap r = 0;
    if (__builtin_mul_overflow(a, b, &r)) raise(Errc::validation_error, "capacity multiplication overflow");
    return r;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Renders "n" when the denominator is one, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_ceil(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) < numerator(r)) ++q;
    return Rational(q);
}

inline Cap to_cap(const BigInt& v) {
    if (v > std::numeric_limits<Cap>::max() || v < std::numeric_limits<Cap>::min())
        raise(Errc::validation_error, "integer out of capacity range: " + v.str());
    return static_cast<Cap>(v);
}

namespace detail {

inline BigInt parse_bigint(std::string_view s, std::string_view full) {
    if (s.empty()) raise(Errc::parse_error, "empty integer in rational '" + std::string(full) + "'");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) raise(Errc::parse_error, "bad integer in rational '" + std::string(full) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            raise(Errc::parse_error, "bad digit in rational '" + std::string(full) + "'");
    return BigInt(std::string(s));
}

}  // namespace detail

// Accepts "n", "n/d", and exact decimals such as "-0.95" (scaled by 10^k).
inline Rational parse_rational(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_bigint(s.substr(0, slash), s);
        BigInt den = detail::parse_bigint(s.substr(slash + 1), s);
        if (den == 0) raise(Errc::parse_error, "zero denominator in '" + std::string(s) + "'");
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view head = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (frac.empty()) raise(Errc::parse_error, "trailing dot in '" + std::string(s) + "'");
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head.remove_prefix(1);
        BigInt ipart = head.empty() ? BigInt(0) : detail::parse_bigint(head, s);
        BigInt fpart = detail::parse_bigint(frac, s);
        if (fpart < 0) raise(Errc::parse_error, "bad fraction digits in '" + std::string(s) + "'");
        BigInt scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        BigInt num = ipart * scale + fpart;
        if (neg) num = -num;
        return Rational(num, scale);
    }
    return Rational(detail::parse_bigint(s, s));
}

// True iff r has a terminating decimal expansion (denominator of form 2^a 5^b).
inline bool has_finite_decimal(const Rational& r) {
    BigInt d = denominator(r);
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

// Exact decimal rendering; requires has_finite_decimal(r).
inline std::string to_decimal_string(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    int twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) raise(Errc::validation_error, "non-terminating decimal: " + to_string(r));
    int digits = twos > fives ? twos : fives;
    BigInt scale = 1;
    for (int k = twos; k < digits; ++k) scale *= 2;
    for (int k = fives; k < digits; ++k) scale *= 5;
    num *= scale;
    bool neg = num < 0;
    if (neg) num = -num;
    std::string s = num.str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
        out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
    }
    return neg ? "-" + out : out;
}

}  // namespace fctp

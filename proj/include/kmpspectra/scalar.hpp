#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "kmpspectra/errors.hpp"

namespace kmpspectra {

/// Exact arbitrary-precision rational. All exact-mode linear algebra is
/// generic over the scalar type and instantiated with either this or double.
using Rational = mpq_class;
using Integer = mpz_class;

/// gmpxx has no long long overloads; on this platform long is 64-bit.
inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }

inline Rational make_rational(long long num, long long den = 1) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" (base 10). Throws parse_error on junk or q=0.
inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw parse_error("invalid rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw parse_error("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite weight");
    return Rational(x);
}

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational from_fraction(long long num, long long den) { return make_rational(num, den); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static int sign(const Rational& x) { return sgn(x); }
    static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double from_fraction(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static bool is_zero(double x) { return x == 0.0; }
    static int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
    static double abs(double x) { return std::fabs(x); }
};

template <typename S>
inline constexpr bool is_exact_scalar_v = scalar_traits<S>::exact;

} // namespace kmpspectra

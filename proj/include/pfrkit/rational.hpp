#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pfrkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(const BigInt& num, const BigInt& den);

/// Accepts "p", "p/q" and plain decimals such as "0.75" (converted exactly).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Exact decimal rendering rounded half away from zero, trailing zeros stripped.
std::string to_decimal_string(const Rational& r, int digits = 12);

double to_double(const Rational& r);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

BigInt pow2(unsigned exponent);
Rational pow(const Rational& base, long exponent);

/// Three-way comparison of base1^exp1 against base2^exp2 for positive bases and
/// rational exponents, done exactly by raising both sides to the common
/// denominator of the exponents. Throws CapExceeded when the integer powers
/// would exceed a few million bits.
int compare_powers(const Rational& base1, const Rational& exp1,
                   const Rational& base2, const Rational& exp2);

/// Smallest dyadic rational u with u >= base^exponent found at the given
/// relative precision (bits); the bound is verified exactly before returning.
/// When the exponent's denominator makes that too expensive, the exponent is
/// first rounded to a multiple of 1/1024 in the direction that keeps u an
/// upper bound, at some loss of tightness.
Rational pow_upper_bound(const Rational& base, const Rational& exponent,
                         int precision_bits = 48);

/// Largest integer m in [0, cap] with m <= value (value >= 0); returns cap when
/// value exceeds it.
std::int64_t floor_capped(const Rational& value, std::int64_t cap);

/// Smallest count c with c >= threshold (threshold >= 0), clamped to uint64.
std::uint64_t count_at_least(const Rational& threshold);
/// Smallest count c with c > threshold (threshold >= 0), clamped to uint64.
std::uint64_t count_above(const Rational& threshold);

}  // namespace pfrkit

#include "pfrkit/rational.hpp"

#include <cmath>
#include <limits>

#include "pfrkit/error.hpp"

namespace pfrkit {
namespace {

constexpr std::uint64_t kMaxPowerBits = std::uint64_t{1} << 24;

BigInt parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) {
    throw OutOfRange("malformed rational '" + std::string(original) + "'");
  }
  BigInt value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw OutOfRange("malformed rational '" + std::string(original) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

std::uint64_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

// base^exponent with base > 0, guarding the size of the result.
Rational guarded_pow(const Rational& base, const BigInt& exponent) {
  if (exponent == 0) return Rational(1);
  const bool negative = exponent < 0;
  const BigInt magnitude = negative ? BigInt(-exponent) : exponent;
  const std::uint64_t bits =
      std::max(bit_length(boost::multiprecision::numerator(base)),
               bit_length(boost::multiprecision::denominator(base)));
  if (magnitude > BigInt(kMaxPowerBits) ||
      BigInt(bits) * magnitude > BigInt(kMaxPowerBits)) {
    throw CapExceeded("exact power comparison exceeds " +
                      std::to_string(kMaxPowerBits) + " bits");
  }
  const Rational value = pfrkit::pow(base, magnitude.convert_to<long>());
  return negative ? Rational(1) / value : value;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw OutOfRange("rational with zero denominator");
  return Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(body.substr(0, slash), text);
    const BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw OutOfRange("rational '" + std::string(text) + "' has zero denominator");
    }
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
      throw OutOfRange("malformed rational '" + std::string(text) + "'");
    }
    const BigInt w = whole.empty() ? BigInt(0) : parse_integer(whole, text);
    const BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(w * scale + f, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  if (digits > 0) frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += whole.str();
  if (!frac.empty()) out += "." + frac;
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

BigInt pow2(unsigned exponent) {
  BigInt v = 1;
  v <<= exponent;
  return v;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw OutOfRange("zero raised to a negative power");
    return pfrkit::pow(Rational(1) / base, -exponent);
  }
  const auto e = static_cast<unsigned>(exponent);
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), e),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), e));
}

int compare_powers(const Rational& base1, const Rational& exp1,
                   const Rational& base2, const Rational& exp2) {
  if (base1 <= 0 || base2 <= 0) throw OutOfRange("compare_powers needs positive bases");
  const BigInt b1 = boost::multiprecision::denominator(exp1);
  const BigInt b2 = boost::multiprecision::denominator(exp2);
  const BigInt common = boost::multiprecision::lcm(b1, b2);
  const BigInt x1 = boost::multiprecision::numerator(exp1) * (common / b1);
  const BigInt x2 = boost::multiprecision::numerator(exp2) * (common / b2);
  const Rational lhs = guarded_pow(base1, x1);
  const Rational rhs = guarded_pow(base2, x2);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

Rational pow_upper_bound(const Rational& base, const Rational& exponent,
                         int precision_bits) {
  if (base <= 0) throw OutOfRange("pow_upper_bound needs a positive base");
  const double approx = std::pow(to_double(base), to_double(exponent));
  if (!(approx > 0.0) || !std::isfinite(approx)) {
    throw CapExceeded("power outside double range");
  }
  int e = 0;
  const double m = std::frexp(approx, &e);  // approx = m * 2^e, m in [0.5, 1)
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  const int slack_bits = std::max(0, 53 - precision_bits);
  BigInt step = pow2(static_cast<unsigned>(slack_bits));
  BigInt top = BigInt(mantissa) + step;
  const int shift = e - 53;
  auto assemble = [&](const BigInt& t) {
    return shift >= 0 ? Rational(t * pow2(static_cast<unsigned>(shift)))
                      : Rational(t, pow2(static_cast<unsigned>(-shift)));
  };
  Rational candidate = assemble(top);
  try {
    while (compare_powers(candidate, Rational(1), base, exponent) < 0) {
      top += step;
      step *= 2;
      candidate = assemble(top);
    }
  } catch (const CapExceeded&) {
    // Move the exponent to a nearby one with denominator 1024 in the
    // direction that does not decrease the power, then bound that instead.
    const BigInt den = boost::multiprecision::denominator(exponent);
    if (den <= 1024 || base == 1) throw;
    const Rational scaled = exponent * 1024;
    const BigInt rounded = base > 1 ? ceil(scaled) : floor(scaled);
    return pow_upper_bound(base, Rational(rounded, 1024), precision_bits);
  }
  return candidate;
}

std::int64_t floor_capped(const Rational& value, std::int64_t cap) {
  if (value >= cap) return cap;
  if (value < 0) return -1;
  return floor(value).convert_to<std::int64_t>();
}

std::uint64_t count_at_least(const Rational& threshold) {
  if (threshold <= 0) return 0;
  const BigInt c = ceil(threshold);
  if (c > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return c.convert_to<std::uint64_t>();
}

std::uint64_t count_above(const Rational& threshold) {
  if (threshold < 0) return 0;
  const BigInt c = floor(threshold) + 1;
  if (c > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return c.convert_to<std::uint64_t>();
}

}  // namespace pfrkit

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Decimal float for the few quantities that are genuinely irrational
// (logarithms in the theorem constants). 50 significant digits.
using Float50 = boost::multiprecision::cpp_bin_float_50;

// Floor division and the representative of a mod b in [0, b). b must be > 0.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod_floor(const BigInt& a, const BigInt& b);

// g = gcd(a, b) together with x, y such that a*x + b*y = g.
struct ExtGcd {
  BigInt g, x, y;
};
ExtGcd ext_gcd(BigInt a, BigInt b);

// Inverse of a modulo m, in [0, m). Requires m >= 1 and gcd(a, m) == 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

BigInt pow_int(const BigInt& base, unsigned exp);

// Fractional part {x} in [0, 1), also for negative x.
Rational frac_part(const Rational& x);

// "num/den" rendering; integers keep an explicit "/1" when `always_slash`.
std::string to_fraction_string(const Rational& r, bool always_slash = false);

// Round-to-nearest (ties away from zero) decimal rendering with the given
// number of significant digits. Pure integer arithmetic, deterministic.
std::string to_decimal_string(const Rational& r, unsigned significant = 15);

std::string to_decimal_string(const Float50& x, unsigned significant = 15);

// Accepts "a/b", plain integers and decimal literals ("0.25", "-3").
Rational parse_rational(const std::string& text);

// FNV-1a 64-bit, used for config digests embedded in output files.
std::uint64_t fnv1a64(std::string_view text);
std::string digest_string(std::uint64_t digest);

}  // namespace hx

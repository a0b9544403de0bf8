#include "haltonx/rational.hpp"

#include "haltonx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace hx {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  BigInt q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  BigInt r = a % b;
  if (r < 0) r += b;
  return r;
}

ExtGcd ext_gcd(BigInt a, BigInt b) {
  BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = std::move(b);
    b = std::move(t);
    t = x0 - q * x1;
    x0 = std::move(x1);
    x1 = std::move(t);
    t = y0 - q * y1;
    y0 = std::move(y1);
    y1 = std::move(t);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return ExtGcd{std::move(a), std::move(x0), std::move(y0)};
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be >= 1");
  if (m == 1) return 0;
  ExtGcd e = ext_gcd(mod_floor(a, m), m);
  if (e.g != 1) {
    throw std::invalid_argument("mod_inverse: arguments are not coprime (gcd = " + e.g.str() + ")");
  }
  return mod_floor(e.x, m);
}

BigInt pow_int(const BigInt& base, unsigned exp) {
  BigInt r = 1, b = base;
  while (exp != 0) {
    if (exp & 1u) r *= b;
    exp >>= 1u;
    if (exp != 0) b *= b;
  }
  return r;
}

Rational frac_part(const Rational& x) {
  const BigInt f = floor_div(numerator(x), denominator(x));
  return x - Rational(f);
}

std::string to_fraction_string(const Rational& r, bool always_slash) {
  const BigInt& den = denominator(r);
  if (den == 1 && !always_slash) return numerator(r).str();
  return numerator(r).str() + "/" + den.str();
}

namespace {

// 10^k for modest k.
BigInt pow10(long k) {
  return pow_int(BigInt(10), static_cast<unsigned>(k));
}

// true iff |r| >= 10^e
bool at_least_pow10(const BigInt& num, const BigInt& den, long e) {
  if (e >= 0) return num >= den * pow10(e);
  return num * pow10(-e) >= den;
}

}  // namespace

std::string to_decimal_string(const Rational& r, unsigned significant) {
  if (significant == 0) significant = 1;
  if (r == 0) return "0";
  const bool neg = r < 0;
  const BigInt num = abs(numerator(r));
  const BigInt& den = denominator(r);

  // e with 10^e <= |r| < 10^{e+1}
  long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  while (!at_least_pow10(num, den, e)) --e;
  while (at_least_pow10(num, den, e + 1)) ++e;

  const long k = static_cast<long>(significant) - 1 - e;
  BigInt n2 = num, d2 = den;
  if (k >= 0) {
    n2 *= pow10(k);
  } else {
    d2 *= pow10(-k);
  }
  BigInt q = n2 / d2;
  const BigInt rem = n2 - q * d2;
  if (2 * rem >= d2) ++q;
  if (q == pow10(static_cast<long>(significant))) {
    q = pow10(static_cast<long>(significant) - 1);
    ++e;
  }

  std::string digits = q.str();
  std::string out;
  auto trim_zeros = [](std::string s) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    return s;
  };

  if (e >= 0 && e < 21) {
    const auto ip = static_cast<std::size_t>(e) + 1;
    if (ip >= digits.size()) {
      out = digits + std::string(ip - digits.size(), '0');
    } else {
      const std::string frac = trim_zeros(digits.substr(ip));
      out = digits.substr(0, ip);
      if (!frac.empty()) out += "." + frac;
    }
  } else if (e < 0 && e >= -6) {
    const std::string frac = trim_zeros(digits);
    out = "0." + std::string(static_cast<std::size_t>(-e) - 1, '0') + frac;
  } else {
    std::string mant = trim_zeros(digits.substr(1));
    out = digits.substr(0, 1);
    if (!mant.empty()) out += "." + mant;
    out += "e" + std::to_string(e);
  }
  return neg ? "-" + out : out;
}

std::string to_decimal_string(const Float50& x, unsigned significant) {
  std::ostringstream os;
  os.precision(significant);
  os << x;
  return os.str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ConfigError("empty rational literal");

  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = (s[pos] == '-');
    ++pos;
  }
  const std::string body = s.substr(pos);
  if (body.empty()) throw ConfigError("malformed rational literal: '" + text + "'");

  auto is_digits = [](const std::string& t) {
    if (t.empty()) return false;
    return std::all_of(t.begin(), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };

  Rational value;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string ns = body.substr(0, slash);
    const std::string ds = body.substr(slash + 1);
    if (!is_digits(ns) || !is_digits(ds)) {
      throw ConfigError("malformed rational literal: '" + text + "'");
    }
    const BigInt den(ds);
    if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
    value = Rational(BigInt(ns), den);
  } else if (const auto dot = body.find('.'); dot != std::string::npos) {
    const std::string ip = body.substr(0, dot);
    const std::string fp = body.substr(dot + 1);
    if ((!ip.empty() && !is_digits(ip)) || !is_digits(fp)) {
      throw ConfigError("malformed rational literal: '" + text + "'");
    }
    const BigInt scale = pow_int(BigInt(10), static_cast<unsigned>(fp.size()));
    const BigInt whole = ip.empty() ? BigInt(0) : BigInt(ip);
    value = Rational(whole * scale + BigInt(fp.empty() ? "0" : fp), scale);
  } else {
    if (!is_digits(body)) throw ConfigError("malformed rational literal: '" + text + "'");
    value = Rational(BigInt(body));
  }
  return neg ? -value : value;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_string(std::uint64_t digest) {
  static const char* hexd = "0123456789abcdef";
  std::string s = "0x";
  for (int shift = 60; shift >= 0; shift -= 4) {
    s.push_back(hexd[(digest >> shift) & 0xF]);
  }
  return s;
}

}  // namespace hx

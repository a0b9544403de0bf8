#include "haltonx/digits.hpp"

#include "haltonx/errors.hpp"

#include <stdexcept>

namespace hx {

ExactPoint::ExactPoint(std::shared_ptr<const BaseSystem> sys, std::vector<DigitVector> coords)
    : sys_(std::move(sys)), coords_(std::move(coords)) {
  if (!sys_) throw std::invalid_argument("ExactPoint: null base system");
  if (static_cast<int>(coords_.size()) != sys_->dimensions()) {
    throw std::invalid_argument("ExactPoint: coordinate count does not match base system");
  }
  for (int i = 0; i < sys_->dimensions(); ++i) {
    const DigitVector& d = coords_[static_cast<std::size_t>(i)];
    if (d.dim != i) throw std::invalid_argument("ExactPoint: coordinate dimension mismatch");
    if (d.depth() > sys_->depth()) {
      throw HorizonError("ExactPoint: digit string deeper than working depth");
    }
    for (int pos = 1; pos <= d.depth(); ++pos) {
      if (d.digits[static_cast<std::size_t>(pos - 1)] >= sys_->radix(i, pos)) {
        throw std::invalid_argument("ExactPoint: digit exceeds its radix bound");
      }
    }
  }
}

ExactPoint ExactPoint::origin(std::shared_ptr<const BaseSystem> sys, int depth) {
  if (!sys) throw std::invalid_argument("ExactPoint::origin: null base system");
  const int r = depth < 0 ? sys->depth() : depth;
  if (r < 0 || r > sys->depth()) throw HorizonError("ExactPoint::origin: depth outside horizon");
  std::vector<DigitVector> coords;
  coords.reserve(static_cast<std::size_t>(sys->dimensions()));
  for (int i = 0; i < sys->dimensions(); ++i) {
    coords.push_back(DigitVector{i, std::vector<std::uint32_t>(static_cast<std::size_t>(r), 0)});
  }
  return ExactPoint(std::move(sys), std::move(coords));
}

Rational ExactPoint::value(int dim) const {
  return digit_value(*sys_, coord(dim));
}

std::vector<Rational> ExactPoint::values() const {
  std::vector<Rational> v;
  v.reserve(coords_.size());
  for (int i = 0; i < dimensions(); ++i) v.push_back(value(i));
  return v;
}

bool ExactPoint::operator==(const ExactPoint& other) const {
  if (sys_.get() != other.sys_.get() && sys_->digest() != other.sys_->digest()) return false;
  return coords_ == other.coords_;
}

void ensure_same_system(const BaseSystem& a, const BaseSystem& b) {
  if (&a == &b) return;
  if (a.canonical_text() != b.canonical_text()) {
    throw std::invalid_argument("operands come from different base systems");
  }
}

DigitVector cantor_digits(const BaseSystem& sys, int dim, const BigInt& n, int depth) {
  if (n < 0) throw std::invalid_argument("cantor_digits: negative index");
  if (depth < 0 || depth > sys.depth()) {
    throw HorizonError("cantor_digits: depth outside working horizon");
  }
  if (n >= sys.cumulative(dim, depth)) {
    int needed = -1;
    for (int r = depth; r <= sys.depth(); ++r) {
      if (n < sys.cumulative(dim, r)) {
        needed = r;
        break;
      }
    }
    const std::string tail = needed < 0
                                 ? "beyond the working depth " + std::to_string(sys.depth())
                                 : "depth " + std::to_string(needed);
    throw HorizonError("cantor_digits: index " + n.str() + " needs " + tail +
                       " but depth " + std::to_string(depth) + " was requested");
  }

  DigitVector d{dim, std::vector<std::uint32_t>(static_cast<std::size_t>(depth), 0)};
  BigInt t = n;
  for (int pos = 1; pos <= depth; ++pos) {
    const std::uint32_t q = sys.radix(dim, pos);
    d.digits[static_cast<std::size_t>(pos - 1)] = static_cast<std::uint32_t>(t % q);
    t /= q;
  }
  return d;
}

BigInt digits_to_index(const BaseSystem& sys, const DigitVector& d) {
  BigInt idx = 0;
  for (int pos = d.depth(); pos >= 1; --pos) {
    const std::uint32_t q = sys.radix(d.dim, pos);
    const std::uint32_t digit = d.digits[static_cast<std::size_t>(pos - 1)];
    if (digit >= q) throw std::invalid_argument("digits_to_index: digit exceeds radix bound");
    idx = idx * q + digit;
  }
  return idx;
}

Rational digit_value(const BaseSystem& sys, const DigitVector& d) {
  BigInt num = 0;
  for (int pos = 1; pos <= d.depth(); ++pos) {
    if (pos > 1) num *= sys.radix(d.dim, pos);
    num += d.digits[static_cast<std::size_t>(pos - 1)];
  }
  return Rational(num, sys.cumulative(d.dim, d.depth()));
}

Rational radical_inverse(const BaseSystem& sys, int dim, const BigInt& n, int depth) {
  return digit_value(sys, cantor_digits(sys, dim, n, depth));
}

DigitVector cantor_expand(const BaseSystem& sys, int dim, const Rational& x, int depth) {
  if (x < 0 || x >= 1) throw std::invalid_argument("cantor_expand: value outside [0, 1)");
  if (depth < 0 || depth > sys.depth()) {
    throw HorizonError("cantor_expand: depth outside working horizon");
  }
  DigitVector d{dim, std::vector<std::uint32_t>(static_cast<std::size_t>(depth), 0)};
  Rational t = x;
  for (int pos = 1; pos <= depth; ++pos) {
    t *= sys.radix(dim, pos);
    const BigInt whole = floor_div(numerator(t), denominator(t));
    d.digits[static_cast<std::size_t>(pos - 1)] = static_cast<std::uint32_t>(whole);
    t -= Rational(whole);
  }
  return d;
}

DigitVector truncate(const DigitVector& d, int depth) {
  if (depth < 0 || depth > d.depth()) {
    throw std::invalid_argument("truncate: depth exceeds stored digits");
  }
  DigitVector out{d.dim, std::vector<std::uint32_t>(d.digits.begin(), d.digits.begin() + depth)};
  return out;
}

ExactPoint truncate(const ExactPoint& x, const std::vector<int>& depths) {
  if (static_cast<int>(depths.size()) != x.dimensions()) {
    throw std::invalid_argument("truncate: depth vector size mismatch");
  }
  std::vector<DigitVector> coords;
  coords.reserve(depths.size());
  for (int i = 0; i < x.dimensions(); ++i) {
    coords.push_back(truncate(x.coord(i), depths[static_cast<std::size_t>(i)]));
  }
  return ExactPoint(x.system_ptr(), std::move(coords));
}

}  // namespace hx

#pragma once

#include "haltonx/base_system.hpp"
#include "haltonx/rational.hpp"

#include <memory>
#include <vector>

namespace hx {

// Finite mixed-radix digit string of one dimension; digits[j] is the digit of
// position j+1 and lies in [0, radix(dim, j+1)).
struct DigitVector {
  int dim = 0;
  std::vector<std::uint32_t> digits;

  int depth() const { return static_cast<int>(digits.size()); }
  bool operator==(const DigitVector&) const = default;
};

// A point of [0,1)^s held as one digit string per dimension, tied to the
// base system it was produced from. Comparisons and values are exact; the
// stored string is the depth-r truncation of the underlying expansion.
class ExactPoint {
 public:
  ExactPoint(std::shared_ptr<const BaseSystem> sys, std::vector<DigitVector> coords);

  static ExactPoint origin(std::shared_ptr<const BaseSystem> sys, int depth = -1);

  const BaseSystem& system() const { return *sys_; }
  const std::shared_ptr<const BaseSystem>& system_ptr() const { return sys_; }
  int dimensions() const { return static_cast<int>(coords_.size()); }
  const DigitVector& coord(int dim) const { return coords_.at(static_cast<std::size_t>(dim)); }
  DigitVector& coord(int dim) { return coords_.at(static_cast<std::size_t>(dim)); }

  Rational value(int dim) const;
  std::vector<Rational> values() const;

  bool operator==(const ExactPoint& other) const;

 private:
  std::shared_ptr<const BaseSystem> sys_;
  std::vector<DigitVector> coords_;
};

// Two points (or a point and a permutation family, ...) may only be combined
// when they come from the same base system.
void ensure_same_system(const BaseSystem& a, const BaseSystem& b);

// Digits of n in the mixed radices of `dim`, depth positions 1..depth.
// Requires 0 <= n < cumulative(dim, depth); otherwise a HorizonError naming
// the depth that would be needed.
DigitVector cantor_digits(const BaseSystem& sys, int dim, const BigInt& n, int depth);

// Inverse of cantor_digits on [0, cumulative(dim, depth)).
BigInt digits_to_index(const BaseSystem& sys, const DigitVector& d);

// Exact radical inverse: the digit-reversal value of n in [0, 1).
Rational radical_inverse(const BaseSystem& sys, int dim, const BigInt& n, int depth);

// Value of a digit string, sum of digit / cumulative-product terms.
Rational digit_value(const BaseSystem& sys, const DigitVector& d);

// Mixed-radix expansion of x in [0,1) to `depth` digits. Exact rational
// arithmetic; terminating expansions are produced as terminating (the
// residual after `depth` digits is in [0, 1/cumulative(dim, depth))).
DigitVector cantor_expand(const BaseSystem& sys, int dim, const Rational& x, int depth);

// Digit-prefix truncations; idempotent.
DigitVector truncate(const DigitVector& d, int depth);
ExactPoint truncate(const ExactPoint& x, const std::vector<int>& depths);

}  // namespace hx

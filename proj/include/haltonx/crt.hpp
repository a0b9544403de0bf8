#pragma once

#include "haltonx/digits.hpp"

#include <string>
#include <vector>

namespace hx {

// One depth per dimension.
using DepthVector = std::vector<int>;

// Modular inverse of the product of the other dimensions' cumulative radix
// products, taken modulo this dimension's cumulative product. Well defined
// because cross-dimension radices are coprime. 1 for a single dimension.
BigInt crt_cofactor(const BaseSystem& sys, int dim, const DepthVector& depths);

// The residue class of indices n whose (unscrambled) sequence point shares a
// given digit prefix: sharing the depth-r prefix of x is equivalent to
// n === residue (mod modulus).
struct PrefixResidue {
  DepthVector depths;
  BigInt modulus;                 // product of the per-dimension cumulative products
  BigInt residue;                 // in [0, modulus)
  std::vector<BigInt> cofactors;  // one per dimension
};

PrefixResidue index_from_prefix(const ExactPoint& x, const DepthVector& depths);

// Residues computed at nested depths agree modulo the coarser modulus.
// True for every valid input; exposed as a self-test predicate.
bool prefix_consistency(const ExactPoint& x, const DepthVector& coarse,
                        const DepthVector& fine);

struct ShiftIdentityResult {
  bool ok = true;
  BigInt counterexample = -1;  // first failing n when !ok
  std::string detail;
};

// Checks, for n = 0..n_max, that the depth-r prefix of the n-th odometer
// iterate of x equals the prefix of the sequence point with index
// n + residue(x, r).
ShiftIdentityResult shift_identity_check(const ExactPoint& x, const DepthVector& depths,
                                         std::uint64_t n_max);

}  // namespace hx

#pragma once

#include "haltonx/digits.hpp"
#include "haltonx/odometer.hpp"
#include "haltonx/permutation.hpp"

#include <vector>

namespace hx {

// Digitwise scrambling. The result is the depth-r truncation of the
// scrambled expansion; applying the inverse family recovers the input.
ExactPoint scramble(const ExactPoint& x, const PermutationFamily& perms);

// Coordinatewise radical inverse of n at the given digit depth
// (depth < 0 means the full working depth).
ExactPoint halton_point(std::shared_ptr<const BaseSystem> sys, const BigInt& n, int depth = -1);

// n-th scrambled orbit point: scramble applied to the n-th odometer iterate
// of x0. Computed by random access (digit counters), so indices may be
// visited in any order; equals stepping the odometer n times.
ExactPoint generalized_point(const BigInt& n, const ExactPoint& x0,
                             const PermutationFamily& perms);

// Block [n0, n0 + count) of scrambled orbit points, deterministic order.
// Internally parallel over disjoint index ranges for large blocks.
std::vector<ExactPoint> generate_block(const BigInt& n0, std::uint64_t count,
                                       const ExactPoint& x0, const PermutationFamily& perms);

// Largest count c such that indices [n0, n0 + c) stay inside the working
// depth for every coordinate of x0.
BigInt horizon_capacity(const ExactPoint& x0, const BigInt& n0);

}  // namespace hx

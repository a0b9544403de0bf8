#pragma once

#include "haltonx/box.hpp"
#include "haltonx/digits.hpp"
#include "haltonx/witness.hpp"

#include <cstdint>
#include <vector>

namespace hx {

// Signed count-minus-expected for one fixed box: (points inside) - N * volume.
Rational local_discrepancy(const std::vector<std::vector<Rational>>& points, const Box& box);
Rational local_discrepancy(const std::vector<ExactPoint>& points, const Box& box);

struct StarResult {
  Rational value;
  std::vector<Rational> corner;  // a maximizing corner
  bool closed_side = false;      // true when the maximum is a limit from above
};

struct StarOptions {
  std::uint64_t eval_cap = 100000000;  // refuse beyond N^s * s corner evaluations
  bool parallel = true;
};

// Exact star discrepancy of an N-point set in [0,1)^s, s <= 3. The supremum
// over anchored half-open boxes is realized over the finite corner grid of
// point coordinates and 1, evaluating both the open-count and the
// closed-count (limit) candidate at every corner.
StarResult star_discrepancy_exact(const std::vector<std::vector<Rational>>& points,
                                  const StarOptions& options = {});

namespace reference {

// Slow grid oracle kept for tests and benchmarks: every corner of the
// coordinate grid, every open/closed combination per dimension, counted
// point by point in pure rational arithmetic.
Rational star_discrepancy_grid(const std::vector<std::vector<Rational>>& points);

// One-dimensional closed form over sorted coordinates:
// max_i max(i/N - x_(i), x_(i) - (i-1)/N).
Rational star_discrepancy_sorted_1d(std::vector<Rational> xs);

}  // namespace reference

// Local discrepancy of one witness box over the window of the first
// `window_len` points starting at the plan's start index, evaluated through
// the index congruence (a hit every box-modulus steps, offset by the shift).
Rational rho_fast(const WitnessPlan& plan, const WitnessBoxes& boxes, const MultiIndex& k,
                  const BigInt& window_len);

struct WindowedMax {
  Rational value;
  BigInt argmax_len;
};

// Maximum over window lengths M = 1..max_len of |local discrepancy of the
// anchored box over the window starting at the start index|, computed
// through the congruence structure (no point generation).
WindowedMax windowed_max_weighted_discrepancy(const WitnessPlan& plan, const WitnessBoxes& boxes,
                                              const BigInt& max_len,
                                              std::uint64_t iteration_cap = 4000000,
                                              bool parallel = true);

// Point-counting reference for the same quantity.
WindowedMax windowed_max_bruteforce(const WitnessPlan& plan, const WitnessBoxes& boxes,
                                    const BigInt& max_len, const BigInt& cap);

}  // namespace hx

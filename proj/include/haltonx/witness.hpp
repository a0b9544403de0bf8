#pragma once

#include "haltonx/box.hpp"
#include "haltonx/crt.hpp"
#include "haltonx/generator.hpp"
#include "haltonx/permutation.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace hx {

// Multi-index over the box family, one entry per dimension, each in [1, m].
using MultiIndex = std::vector<int>;

// Lexicographic successor with the last coordinate fastest; false after the
// final index (m, ..., m).
bool next_multi_index(MultiIndex& k, int m);
std::size_t flat_index(const MultiIndex& k, int m);
std::size_t box_family_size(int m, int s);

// Everything the position-selection stage produces for one dimension.
struct WitnessDimension {
  int alphabet_index = 1;          // 1-based index of the chosen alphabet member
  std::uint32_t base = 0;          // its radix value
  std::uint32_t diff_residue = 0;  // permutation difference residue shared by the positions
  std::vector<int> uniform_positions;   // positions with that (radix, difference residue)
  BigInt complement;               // product of the other dimensions' chosen bases
  BigInt inverse_class;            // class of the inverse cumulative products mod complement
  std::vector<int> witness_positions;   // positions whose inverse falls in that class
  std::uint32_t cross_residue = 0;  // product of the other dimensions' classes, mod base
  std::uint32_t base_gcd = 0;       // gcd(diff_residue, base)
  std::uint32_t base_reduced = 0;   // base / base_gcd (> 1)
  std::uint32_t diff_reduced = 0;   // diff_residue / base_gcd
  std::uint32_t shift_numerator = 0;  // cross_residue * diff_reduced mod base_reduced
};

// The resolved witness plan: per dimension a base, a difference residue and
// an increasing list of digit positions at which both are constant and the
// inverse cumulative products fall into one residue class. All structural
// invariants are checked at construction.
class WitnessPlan {
 public:
  WitnessPlan(std::shared_ptr<const BaseSystem> sys,
              std::shared_ptr<const PermutationFamily> perms, int horizon,
              std::vector<WitnessDimension> dims);

  const BaseSystem& system() const { return *sys_; }
  const std::shared_ptr<const BaseSystem>& system_ptr() const { return sys_; }
  const PermutationFamily& permutations() const { return *perms_; }
  const std::shared_ptr<const PermutationFamily>& permutations_ptr() const { return perms_; }

  int horizon() const { return horizon_; }
  int dimensions() const { return static_cast<int>(dims_.size()); }
  const std::vector<WitnessDimension>& dims() const { return dims_; }
  const WitnessDimension& dim(int i) const { return dims_.at(static_cast<std::size_t>(i)); }

  const BigInt& base_product() const { return base_product_; }  // product of the chosen bases
  int m() const { return m_; }                                  // min class size over dimensions

  // Cumulative radix product at the k-th witness position of dimension i
  // (k is 1-based, k <= class size of that dimension).
  const BigInt& cumulative_at_witness(int dim, int k) const;

  // Product over dimensions of cumulative_at_witness(i, k_i).
  BigInt box_modulus(const MultiIndex& k) const;
  BigInt full_modulus() const;  // box_modulus((m, ..., m))

  DepthVector depths_at_m() const;  // witness position m per dimension

  // Fractional part of the sum of cross_residue * diff_residue / base.
  Rational shift_fraction() const;
  // Sum of shift_numerator / base_reduced (not reduced mod 1).
  Rational reduced_shift_sum() const;

 private:
  std::shared_ptr<const BaseSystem> sys_;
  std::shared_ptr<const PermutationFamily> perms_;
  int horizon_ = 0;
  std::vector<WitnessDimension> dims_;
  BigInt base_product_;
  int m_ = 0;
};

// Position selection over digit positions 1..horizon. Deterministic
// tie-breaking: smallest alphabet index, then smallest difference residue,
// then smallest residue class.
WitnessPlan select_tau(std::shared_ptr<const BaseSystem> sys,
                       std::shared_ptr<const PermutationFamily> perms, int horizon);

struct TheoremConstants {
  Float50 c1;        // 2 s h0 q0^s log2(q0)
  Float50 c_closed;  // 2^{s+3} s^s h0^s q0^{s^2} log2^s(q0)
};
TheoremConstants theorem_constants(int s, int h0, std::uint32_t q0);

// Sharper instance constant 8 * p0 * c1^s for a concrete plan.
Float50 instance_constant(const TheoremConstants& c, const BigInt& base_product, int s);

// The box family, boundary point, shifts and start index for one plan and
// one start point x.
class WitnessBoxes {
 public:
  WitnessBoxes(const WitnessPlan& plan, ExactPoint x);

  const ExactPoint& start_point() const { return x_; }
  int m() const { return m_; }
  int dimensions() const { return s_; }

  const std::vector<Rational>& boundary() const { return boundary_; }  // y_i
  const std::vector<std::vector<Rational>>& boundary_partial() const {
    return boundary_partial_;  // [i][k-1]
  }
  // Scrambling preimage digits of the boundary point and of 0, per dimension,
  // positions 1..(witness position m).
  const std::vector<std::vector<std::uint32_t>>& preimage_digits() const { return preimage_; }
  const std::vector<std::vector<std::uint32_t>>& zero_preimage_digits() const {
    return zero_preimage_;
  }

  const std::vector<BigInt>& shifts() const { return shifts_; }        // flat, one per box
  const std::vector<BigInt>& box_moduli() const { return moduli_; }    // flat, one per box
  const std::vector<BigInt>& box_residues() const { return residues_; }
  const std::vector<BigInt>& box_residues_zero() const { return residues_zero_; }

  const BigInt& start_offset() const { return start_offset_; }          // prefix residue of x
  const BigInt& boundary_residue() const { return boundary_residue_; }  // prefix residue of u
  const BigInt& start_index() const { return start_index_; }            // v in [0, full modulus)

  Box box(const MultiIndex& k) const;
  Box anchored() const;  // the union box [0, y)

 private:
  ExactPoint x_;
  int s_ = 0;
  int m_ = 0;
  std::vector<Rational> boundary_;
  std::vector<std::vector<Rational>> boundary_partial_;
  std::vector<std::vector<std::uint32_t>> preimage_;
  std::vector<std::vector<std::uint32_t>> zero_preimage_;
  std::vector<BigInt> shifts_, moduli_, residues_, residues_zero_;
  BigInt start_offset_, boundary_residue_, start_index_;
};

WitnessBoxes build_boxes(const WitnessPlan& plan, const ExactPoint& x);

// Two independent membership tests for sequence index n and box k: interval
// membership of the scrambled orbit point, and the index congruence. They
// must agree for every n and k.
bool box_membership_geometric(const WitnessPlan& plan, const WitnessBoxes& boxes,
                              const BigInt& n, const MultiIndex& k);
bool box_membership_congruence(const WitnessPlan& plan, const WitnessBoxes& boxes,
                               const BigInt& n, const MultiIndex& k);

struct AveragedDiscrepancy {
  Rational value;
  std::vector<Rational> per_box;  // flat layout, aligned with WitnessBoxes tables
};

// Closed form: sum over boxes of (1/2 - shift/modulus - 1/(2 modulus)).
AveragedDiscrepancy averaged_discrepancy_closed_form(const WitnessPlan& plan,
                                                     const WitnessBoxes& boxes);

// Independent enumeration: the exact average over all window lengths
// M = 1..full_modulus of the local discrepancy of the anchored box over the
// window starting at the start index. Refuses when full_modulus exceeds cap.
AveragedDiscrepancy averaged_discrepancy_bruteforce(const WitnessPlan& plan,
                                                    const WitnessBoxes& boxes,
                                                    const BigInt& cap);

struct Lemma2Report {
  Rational shift_fraction;       // fractional part of the common shift
  bool fraction_is_half = false; // must never be true
  Rational distance_to_half;     // |1/2 - shift_fraction|
  Rational half_distance_bound;  // 1/(2 p0)
  bool half_distance_ok = false;
  bool hypothesis_met = false;   // m >= 2 p0
  Rational averaged_value;       // closed-form averaged discrepancy
  Rational lower_bound;          // m^s / (4 p0)
  bool bound_ok = false;         // |averaged_value| >= lower_bound
};

Lemma2Report lemma2_bound(const WitnessPlan& plan);

struct WeightedDstar {
  BigInt length;
  Rational dstar;
  Rational weighted;  // length * dstar
};

struct TheoremChainOptions {
  std::optional<BigInt> total_points;  // N; when absent, 2 * full_modulus is used
  std::optional<int> horizon;          // direct override of the position horizon
  BigInt enumeration_cap = 100000;     // brute-force window enumeration cap
  std::uint64_t window_iteration_cap = 4000000;  // fast-path window-length cap
  std::uint64_t star_eval_cap = 100000000;       // corner-evaluation budget per D* call
};

struct TheoremChainReport {
  int horizon = 0;
  int m = 0;
  BigInt base_product;
  BigInt full_modulus;
  BigInt start_index;
  BigInt start_offset;
  BigInt n_effective;
  bool n_given = false;

  Rational averaged_closed;
  std::optional<Rational> averaged_brute;
  Lemma2Report lemma2;

  Rational window_max;  // fast path, max over window lengths of |local discrepancy|
  BigInt window_argmax;
  std::optional<Rational> window_max_brute;

  std::optional<WeightedDstar> window_weighted;   // at the maximizing window length
  std::vector<WeightedDstar> prefix_weighted;     // exact evaluations at selected prefixes
  std::optional<Rational> prefix_weighted_best;   // max of the above (lower bound of the sup)

  bool averaging_ok = false;                // |averaged| <= window_max
  std::optional<bool> window_vs_dstar_ok;   // window_max <= window_weighted
  std::optional<bool> chain_ok;             // window_max <= 2 * prefix_weighted_best
  std::optional<bool> size_ok;              // 2 * full_modulus <= N
  std::optional<bool> log_hypothesis_ok;    // log2 N >= 2 q0^{s-1} c1

  TheoremConstants constants;
  Float50 instance_c;
  std::optional<Float50> bound_closed;    // log2^s(N) / C
  std::optional<Float50> bound_instance;  // 2 log2^s(N) / (8 p0 c1^s)

  bool identities_ok = false;  // all exact identities and inequalities that were checked
};

TheoremChainReport theorem_chain(std::shared_ptr<const BaseSystem> sys,
                                 std::shared_ptr<const PermutationFamily> perms,
                                 const ExactPoint& x, const TheoremChainOptions& options);

}  // namespace hx

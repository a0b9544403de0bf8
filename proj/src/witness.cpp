#include "haltonx/witness.hpp"

#include "haltonx/discrepancy.hpp"
#include "haltonx/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hx {

bool next_multi_index(MultiIndex& k, int m) {
  for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i) {
    if (k[static_cast<std::size_t>(i)] < m) {
      ++k[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k.size(); ++j) k[j] = 1;
      return true;
    }
  }
  return false;
}

std::size_t flat_index(const MultiIndex& k, int m) {
  std::size_t flat = 0;
  for (int v : k) {
    flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(v - 1);
  }
  return flat;
}

std::size_t box_family_size(int m, int s) {
  const BigInt total = pow_int(BigInt(m), static_cast<unsigned>(s));
  if (total > BigInt(1) << 22) {
    throw CapError("box family of size " + total.str() + " is too large to materialize");
  }
  return static_cast<std::size_t>(total);
}

WitnessPlan::WitnessPlan(std::shared_ptr<const BaseSystem> sys,
                         std::shared_ptr<const PermutationFamily> perms, int horizon,
                         std::vector<WitnessDimension> dims)
    : sys_(std::move(sys)), perms_(std::move(perms)), horizon_(horizon), dims_(std::move(dims)) {
  if (!sys_ || !perms_) throw std::invalid_argument("WitnessPlan: null inputs");
  ensure_same_system(*sys_, perms_->system());
  if (static_cast<int>(dims_.size()) != sys_->dimensions()) {
    throw std::invalid_argument("WitnessPlan: dimension count mismatch");
  }

  base_product_ = 1;
  for (const WitnessDimension& d : dims_) base_product_ *= d.base;

  m_ = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const int count = static_cast<int>(dims_[i].witness_positions.size());
    m_ = (i == 0) ? count : std::min(m_, count);
  }

  // Structural invariants. These are consequences of the construction; a
  // violation is a bug, not bad input.
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const WitnessDimension& d = dims_[i];
    const int dim = static_cast<int>(i);
    if (d.base < 2) throw std::logic_error("witness plan: base < 2");
    if (d.complement != base_product_ / d.base) {
      throw std::logic_error("witness plan: complement mismatch");
    }
    for (int pos : d.uniform_positions) {
      if (sys_->radix(dim, pos) != d.base ||
          perms_->diff_residue(dim, pos) != d.diff_residue) {
        throw std::logic_error("witness plan: position breaks radix/difference uniformity");
      }
    }
    for (int pos : d.witness_positions) {
      if (sys_->radix(dim, pos) != d.base ||
          perms_->diff_residue(dim, pos) != d.diff_residue) {
        throw std::logic_error("witness plan: witness position breaks uniformity");
      }
      if (d.complement > 1) {
        const BigInt inv = mod_inverse(sys_->cumulative(dim, pos), d.complement);
        if (inv != d.inverse_class) {
          throw std::logic_error("witness plan: witness position outside its residue class");
        }
      }
    }
    if (d.base_gcd != std::gcd(d.diff_residue, d.base) || d.base_reduced != d.base / d.base_gcd ||
        d.diff_reduced != d.diff_residue / d.base_gcd) {
      throw std::logic_error("witness plan: reduced residue bookkeeping mismatch");
    }
    if (d.base_reduced <= 1) throw std::logic_error("witness plan: reduced base must exceed 1");
    if (std::gcd(d.cross_residue, d.base) != 1) {
      throw std::logic_error("witness plan: cross residue not coprime to base");
    }
    if (d.shift_numerator == 0 || std::gcd(d.shift_numerator, d.base_reduced) != 1) {
      throw std::logic_error("witness plan: shift numerator not a unit");
    }
    // Pigeonhole lower bound on the uniform-position count.
    const long lhs = static_cast<long>(d.uniform_positions.size()) *
                     static_cast<long>(sys_->dimension(dim).alphabet.size()) *
                     static_cast<long>(sys_->max_radix());
    if (lhs < horizon_) throw std::logic_error("witness plan: uniform position count too small");
  }

  // m >= horizon / (h0 * q0^s)
  const BigInt denom = BigInt(sys_->max_alphabet_size()) *
                       pow_int(BigInt(sys_->max_radix()),
                               static_cast<unsigned>(sys_->dimensions()));
  if (BigInt(m_) * denom < horizon_) {
    throw std::logic_error("witness plan: class size below its pigeonhole bound");
  }
}

const BigInt& WitnessPlan::cumulative_at_witness(int dim, int k) const {
  const WitnessDimension& d = this->dim(dim);
  if (k < 1 || k > static_cast<int>(d.witness_positions.size())) {
    throw std::invalid_argument("cumulative_at_witness: index outside the witness list");
  }
  return sys_->cumulative(dim, d.witness_positions[static_cast<std::size_t>(k - 1)]);
}

BigInt WitnessPlan::box_modulus(const MultiIndex& k) const {
  if (static_cast<int>(k.size()) != dimensions()) {
    throw std::invalid_argument("box_modulus: multi-index size mismatch");
  }
  BigInt p = 1;
  for (int i = 0; i < dimensions(); ++i) {
    p *= cumulative_at_witness(i, k[static_cast<std::size_t>(i)]);
  }
  return p;
}

BigInt WitnessPlan::full_modulus() const {
  BigInt p = 1;
  for (int i = 0; i < dimensions(); ++i) p *= cumulative_at_witness(i, m_);
  return p;
}

DepthVector WitnessPlan::depths_at_m() const {
  DepthVector r;
  r.reserve(dims_.size());
  for (const WitnessDimension& d : dims_) {
    r.push_back(d.witness_positions[static_cast<std::size_t>(m_ - 1)]);
  }
  return r;
}

Rational WitnessPlan::shift_fraction() const {
  Rational sum = 0;
  for (const WitnessDimension& d : dims_) {
    sum += Rational(BigInt(d.cross_residue) * d.diff_residue, BigInt(d.base));
  }
  return frac_part(sum);
}

Rational WitnessPlan::reduced_shift_sum() const {
  Rational sum = 0;
  for (const WitnessDimension& d : dims_) {
    sum += Rational(BigInt(d.shift_numerator), BigInt(d.base_reduced));
  }
  return sum;
}

WitnessPlan select_tau(std::shared_ptr<const BaseSystem> sys,
                       std::shared_ptr<const PermutationFamily> perms, int horizon) {
  if (!sys || !perms) throw std::invalid_argument("select_tau: null inputs");
  ensure_same_system(*sys, perms->system());
  if (horizon < 1) throw std::invalid_argument("select_tau: horizon must be >= 1");
  if (horizon > sys->depth()) {
    throw HorizonError("select_tau: horizon " + std::to_string(horizon) +
                       " exceeds the working depth " + std::to_string(sys->depth()));
  }

  const int s = sys->dimensions();
  std::vector<WitnessDimension> dims(static_cast<std::size_t>(s));

  for (int i = 0; i < s; ++i) {
    WitnessDimension& d = dims[static_cast<std::size_t>(i)];
    const std::vector<std::uint32_t>& alphabet = sys->dimension(i).alphabet;

    // Stage 1: the (alphabet member, difference residue) pair realized at the
    // most positions. Strictly-greater updates keep the smallest candidates.
    std::size_t best = 0;
    for (int j = 0; j < static_cast<int>(alphabet.size()); ++j) {
      const std::uint32_t q = alphabet[static_cast<std::size_t>(j)];
      std::map<std::uint32_t, std::vector<int>> by_residue;
      for (int pos = 1; pos <= horizon; ++pos) {
        if (sys->radix(i, pos) == q) {
          by_residue[perms->diff_residue(i, pos)].push_back(pos);
        }
      }
      for (std::uint32_t res = 1; res < q; ++res) {
        const auto it = by_residue.find(res);
        if (it == by_residue.end()) continue;
        if (it->second.size() > best) {
          best = it->second.size();
          d.alphabet_index = j + 1;
          d.base = q;
          d.diff_residue = res;
          d.uniform_positions = it->second;
        }
      }
    }
    if (best == 0) throw std::logic_error("select_tau: no positions found");  // unreachable
  }

  BigInt base_product = 1;
  for (const WitnessDimension& d : dims) base_product *= d.base;

  for (int i = 0; i < s; ++i) {
    WitnessDimension& d = dims[static_cast<std::size_t>(i)];
    d.complement = base_product / d.base;

    if (d.complement == 1) {
      // Single residue class: every uniform position qualifies.
      d.inverse_class = 0;
      d.witness_positions = d.uniform_positions;
    } else {
      std::map<BigInt, std::vector<int>> by_class;
      for (int pos : d.uniform_positions) {
        by_class[mod_inverse(sys->cumulative(i, pos), d.complement)].push_back(pos);
      }
      std::size_t best = 0;
      for (const auto& [cls, positions] : by_class) {
        if (positions.size() > best) {
          best = positions.size();
          d.inverse_class = cls;
          d.witness_positions = positions;
        }
      }
    }
  }

  for (int i = 0; i < s; ++i) {
    WitnessDimension& d = dims[static_cast<std::size_t>(i)];
    BigInt cross = 1;
    for (int j = 0; j < s; ++j) {
      if (j == i) continue;
      // For a single dimension this loop is empty and cross stays 1.
      cross = cross * dims[static_cast<std::size_t>(j)].inverse_class % d.base;
    }
    d.cross_residue = static_cast<std::uint32_t>(mod_floor(cross, d.base));
    d.base_gcd = std::gcd(d.diff_residue, d.base);
    d.base_reduced = d.base / d.base_gcd;
    d.diff_reduced = d.diff_residue / d.base_gcd;
    d.shift_numerator = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(d.cross_residue) * d.diff_reduced) % d.base_reduced);
  }

  return WitnessPlan(std::move(sys), std::move(perms), horizon, std::move(dims));
}

TheoremConstants theorem_constants(int s, int h0, std::uint32_t q0) {
  if (s < 2) throw std::invalid_argument("theorem_constants: needs s >= 2");
  if (h0 < 1 || q0 < 2) throw std::invalid_argument("theorem_constants: bad h0/q0");
  const Float50 log2q = log(Float50(q0)) / log(Float50(2));
  TheoremConstants out;
  out.c1 = 2 * Float50(s) * Float50(h0) * pow(Float50(q0), s) * log2q;
  out.c_closed = pow(Float50(2), s + 3) * pow(Float50(s), s) * pow(Float50(h0), s) *
                 pow(Float50(q0), s * s) * pow(log2q, s);
  return out;
}

Float50 instance_constant(const TheoremConstants& c, const BigInt& base_product, int s) {
  return 8 * Float50(base_product.str()) * pow(c.c1, s);
}

namespace {

BigInt digit_row_index(const BaseSystem& sys, int dim,
                       const std::vector<std::uint32_t>& digits, int depth) {
  BigInt idx = 0;
  for (int pos = depth; pos >= 1; --pos) {
    idx = idx * sys.radix(dim, pos) + digits[static_cast<std::size_t>(pos - 1)];
  }
  return idx;
}

}  // namespace

WitnessBoxes::WitnessBoxes(const WitnessPlan& plan, ExactPoint x) : x_(std::move(x)) {
  const BaseSystem& sys = plan.system();
  const PermutationFamily& perms = plan.permutations();
  ensure_same_system(sys, x_.system());

  s_ = plan.dimensions();
  m_ = plan.m();
  const DepthVector depth_m = plan.depths_at_m();
  for (int i = 0; i < s_; ++i) {
    if (x_.coord(i).depth() < depth_m[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument(
          "build_boxes: start point digits are shallower than the witness depth");
    }
  }

  // Boundary point: one unit digit at every witness position.
  boundary_.assign(static_cast<std::size_t>(s_), Rational(0));
  boundary_partial_.assign(static_cast<std::size_t>(s_), {});
  preimage_.assign(static_cast<std::size_t>(s_), {});
  zero_preimage_.assign(static_cast<std::size_t>(s_), {});
  for (int i = 0; i < s_; ++i) {
    const WitnessDimension& d = plan.dim(i);
    Rational sum = 0;
    auto& partial = boundary_partial_[static_cast<std::size_t>(i)];
    partial.reserve(static_cast<std::size_t>(m_));
    for (int k = 1; k <= m_; ++k) {
      sum += Rational(BigInt(1), plan.cumulative_at_witness(i, k));
      partial.push_back(sum);
    }
    boundary_[static_cast<std::size_t>(i)] = sum;

    const int depth = depth_m[static_cast<std::size_t>(i)];
    std::vector<std::uint32_t> ydigits(static_cast<std::size_t>(depth), 0);
    for (int k = 1; k <= m_; ++k) {
      ydigits[static_cast<std::size_t>(d.witness_positions[static_cast<std::size_t>(k - 1)] - 1)] =
          1;
    }
    auto& u = preimage_[static_cast<std::size_t>(i)];
    auto& uz = zero_preimage_[static_cast<std::size_t>(i)];
    u.resize(static_cast<std::size_t>(depth));
    uz.resize(static_cast<std::size_t>(depth));
    for (int pos = 1; pos <= depth; ++pos) {
      u[static_cast<std::size_t>(pos - 1)] =
          perms.inverse(i, pos, ydigits[static_cast<std::size_t>(pos - 1)]);
      uz[static_cast<std::size_t>(pos - 1)] = perms.inverse(i, pos, 0);
    }
  }

  // Residues and shifts per box.
  const std::size_t total = box_family_size(m_, s_);
  shifts_.resize(total);
  moduli_.resize(total);
  residues_.resize(total);
  residues_zero_.resize(total);

  const Rational shift_frac = plan.shift_fraction();
  MultiIndex k(static_cast<std::size_t>(s_), 1);
  while (true) {
    const std::size_t flat = flat_index(k, m_);
    const BigInt modulus = plan.box_modulus(k);

    BigInt residue = 0;
    BigInt residue_zero = 0;
    BigInt shift = 0;
    for (int i = 0; i < s_; ++i) {
      const WitnessDimension& d = plan.dim(i);
      const int tau = d.witness_positions[static_cast<std::size_t>(k[static_cast<std::size_t>(i)] - 1)];
      const BigInt& cum = sys.cumulative(i, tau);

      BigInt others = 1;
      for (int j = 0; j < s_; ++j) {
        if (j == i) continue;
        const int tauj = plan.dim(j).witness_positions
                             [static_cast<std::size_t>(k[static_cast<std::size_t>(j)] - 1)];
        others = others * sys.cumulative(j, tauj) % cum;
      }
      const BigInt cof = mod_inverse(others, cum);
      if (mod_floor(cof, d.base) != d.cross_residue) {
        throw std::logic_error("build_boxes: cofactor residue departs from the plan value");
      }

      const auto& u = preimage_[static_cast<std::size_t>(i)];
      const auto& uz = zero_preimage_[static_cast<std::size_t>(i)];
      std::vector<std::uint32_t> udigits(u.begin(), u.begin() + tau);
      std::vector<std::uint32_t> uzdigits = udigits;
      uzdigits[static_cast<std::size_t>(tau - 1)] = uz[static_cast<std::size_t>(tau - 1)];

      const BigInt weight = modulus / cum;
      residue += cof * weight % modulus * digit_row_index(sys, i, udigits, tau);
      residue_zero += cof * weight % modulus * digit_row_index(sys, i, uzdigits, tau);
      shift += cof * (modulus / d.base) % modulus * d.diff_residue;
    }
    residue = mod_floor(residue, modulus);
    residue_zero = mod_floor(residue_zero, modulus);
    shift = mod_floor(shift, modulus);

    if (mod_floor(residue_zero - residue - shift, modulus) != 0) {
      throw std::logic_error("build_boxes: zero-digit residue is not residue + shift");
    }
    if (frac_part(Rational(shift, modulus)) != shift_frac) {
      throw std::logic_error("build_boxes: shift fraction differs between boxes");
    }

    shifts_[flat] = std::move(shift);
    moduli_[flat] = modulus;
    residues_[flat] = std::move(residue);
    residues_zero_[flat] = std::move(residue_zero);

    if (!next_multi_index(k, m_)) break;
  }

  start_offset_ = index_from_prefix(x_, depth_m).residue;
  const MultiIndex full(static_cast<std::size_t>(s_), m_);
  boundary_residue_ = residues_[flat_index(full, m_)];
  start_index_ = mod_floor(boundary_residue_ - start_offset_, plan.full_modulus());
}

Box WitnessBoxes::box(const MultiIndex& k) const {
  if (static_cast<int>(k.size()) != s_) {
    throw std::invalid_argument("WitnessBoxes::box: multi-index size mismatch");
  }
  Box b;
  b.lower.reserve(static_cast<std::size_t>(s_));
  b.upper.reserve(static_cast<std::size_t>(s_));
  for (int i = 0; i < s_; ++i) {
    const int ki = k[static_cast<std::size_t>(i)];
    if (ki < 1 || ki > m_) throw std::invalid_argument("WitnessBoxes::box: index out of range");
    const auto& partial = boundary_partial_[static_cast<std::size_t>(i)];
    const Rational upper = partial[static_cast<std::size_t>(ki - 1)];
    const Rational lower = ki == 1 ? Rational(0) : partial[static_cast<std::size_t>(ki - 2)];
    b.lower.push_back(lower);
    b.upper.push_back(upper);
  }
  return b;
}

Box WitnessBoxes::anchored() const {
  Box b;
  b.lower.assign(static_cast<std::size_t>(s_), Rational(0));
  b.upper = boundary_;
  return b;
}

WitnessBoxes build_boxes(const WitnessPlan& plan, const ExactPoint& x) {
  return WitnessBoxes(plan, x);
}

bool box_membership_geometric(const WitnessPlan& plan, const WitnessBoxes& boxes,
                              const BigInt& n, const MultiIndex& k) {
  const ExactPoint pt = generalized_point(n, boxes.start_point(), plan.permutations());
  return box_contains(boxes.box(k), pt.values());
}

bool box_membership_congruence(const WitnessPlan& plan, const WitnessBoxes& boxes,
                               const BigInt& n, const MultiIndex& k) {
  (void)plan;
  const std::size_t flat = flat_index(k, boxes.m());
  return mod_floor(n - boxes.start_index() - boxes.shifts()[flat], boxes.box_moduli()[flat]) == 0;
}

AveragedDiscrepancy averaged_discrepancy_closed_form(const WitnessPlan& plan,
                                                     const WitnessBoxes& boxes) {
  AveragedDiscrepancy out;
  const std::size_t total = box_family_size(boxes.m(), boxes.dimensions());
  out.per_box.resize(total);
  out.value = 0;
  (void)plan;
  for (std::size_t flat = 0; flat < total; ++flat) {
    const BigInt& modulus = boxes.box_moduli()[flat];
    const Rational term = Rational(1, 2) - Rational(boxes.shifts()[flat], modulus) -
                          Rational(BigInt(1), 2 * modulus);
    out.per_box[flat] = term;
    out.value += term;
  }
  return out;
}

AveragedDiscrepancy averaged_discrepancy_bruteforce(const WitnessPlan& plan,
                                                    const WitnessBoxes& boxes,
                                                    const BigInt& cap) {
  const BigInt full = plan.full_modulus();
  if (full > cap) {
    throw CapError("averaged-discrepancy enumeration needs " + full.str() +
                   " windows, above the cap " + cap.str());
  }
  const auto window_count = static_cast<std::int64_t>(full);
  const ExactPoint& x = boxes.start_point();
  const BigInt& v = boxes.start_index();

  if (horizon_capacity(x, v) < full) {
    throw HorizonError("averaged-discrepancy enumeration overflows the working depth; raise "
                       "'depth' in the base system config");
  }

  const int s = boxes.dimensions();
  const int m = boxes.m();
  const std::size_t total = box_family_size(m, s);

  // Every point of the window lands in at most one box: its per-dimension
  // interval indices. A point inside the anchored box determines them all.
  std::vector<std::int64_t> interval_of_point(static_cast<std::size_t>(window_count), -1);

#pragma omp parallel for schedule(static) if (window_count >= 256)
  for (std::int64_t t = 0; t < window_count; ++t) {
    const ExactPoint pt = generalized_point(v + t, x, plan.permutations());
    std::size_t flat = 0;
    bool inside = true;
    for (int i = 0; i < s && inside; ++i) {
      const Rational value = pt.value(i);
      const auto& partial = boxes.boundary_partial()[static_cast<std::size_t>(i)];
      const auto it = std::upper_bound(partial.begin(), partial.end(), value);
      if (it == partial.end()) {
        inside = false;  // at or beyond the boundary in this dimension
      } else {
        flat = flat * static_cast<std::size_t>(m) +
               static_cast<std::size_t>(it - partial.begin());
      }
    }
    interval_of_point[static_cast<std::size_t>(t)] =
        inside ? static_cast<std::int64_t>(flat) : -1;
  }

  // A point at offset t contributes to the windows of length > t.
  std::vector<BigInt> weighted(total, BigInt(0));
  BigInt weighted_anchored = 0;
  for (std::int64_t t = 0; t < window_count; ++t) {
    const std::int64_t flat = interval_of_point[static_cast<std::size_t>(t)];
    if (flat < 0) continue;
    const BigInt w = full - t;
    weighted[static_cast<std::size_t>(flat)] += w;
    weighted_anchored += w;
  }

  AveragedDiscrepancy out;
  out.per_box.resize(total);
  Rational volume = 1;
  for (const Rational& y : boxes.boundary()) volume *= y;
  out.value = Rational(weighted_anchored, full) - volume * Rational(full + 1, 2);
  for (std::size_t flat = 0; flat < total; ++flat) {
    out.per_box[flat] = Rational(weighted[flat], full) -
                        Rational(full + 1, 2 * boxes.box_moduli()[flat]);
  }
  return out;
}

Lemma2Report lemma2_bound(const WitnessPlan& plan) {
  Lemma2Report report;
  const int s = plan.dimensions();
  const int m = plan.m();
  const BigInt& p0 = plan.base_product();

  report.shift_fraction = plan.shift_fraction();
  if (frac_part(plan.reduced_shift_sum()) != report.shift_fraction) {
    throw std::logic_error("lemma2_bound: reduced shift sum and shift fraction disagree");
  }
  report.fraction_is_half = report.shift_fraction == Rational(1, 2);
  report.distance_to_half = abs(Rational(1, 2) - report.shift_fraction);
  report.half_distance_bound = Rational(BigInt(1), 2 * p0);
  report.half_distance_ok = report.distance_to_half >= report.half_distance_bound;
  report.hypothesis_met = BigInt(m) >= 2 * p0;

  // Closed form through the common shift fraction:
  //   m^s (1/2 - fraction) - (1/2) sum over boxes of 1/modulus,
  // where the modulus sum factorizes over dimensions.
  Rational modulus_sum = 1;
  for (int i = 0; i < s; ++i) {
    Rational dim_sum = 0;
    for (int k = 1; k <= m; ++k) {
      dim_sum += Rational(BigInt(1), plan.cumulative_at_witness(i, k));
    }
    modulus_sum *= dim_sum;
  }
  const BigInt boxes_total = pow_int(BigInt(m), static_cast<unsigned>(s));
  report.averaged_value = Rational(boxes_total) * (Rational(1, 2) - report.shift_fraction) -
                          modulus_sum / 2;
  report.lower_bound = Rational(boxes_total, 4 * p0);
  report.bound_ok = abs(report.averaged_value) >= report.lower_bound;
  return report;
}

namespace {

// Exact weighted star discrepancy of the first `len` scrambled orbit points,
// skipped when the corner-evaluation budget would be exceeded.
std::optional<WeightedDstar> weighted_prefix_dstar(const ExactPoint& x,
                                                   const PermutationFamily& perms,
                                                   const BigInt& start, const BigInt& len,
                                                   std::uint64_t star_cap) {
  if (len <= 0) return std::nullopt;
  if (len > BigInt(1) << 24) return std::nullopt;
  const auto n = static_cast<std::uint64_t>(len);
  const int s = x.dimensions();
  BigInt evals = pow_int(BigInt(len), static_cast<unsigned>(s)) * s;
  if (evals > BigInt(star_cap)) return std::nullopt;

  const std::vector<ExactPoint> pts = generate_block(start, n, x, perms);
  std::vector<std::vector<Rational>> values;
  values.reserve(pts.size());
  for (const ExactPoint& p : pts) values.push_back(p.values());

  StarOptions options;
  options.eval_cap = star_cap;
  const StarResult r = star_discrepancy_exact(values, options);
  WeightedDstar out;
  out.length = len;
  out.dstar = r.value;
  out.weighted = Rational(len) * r.value;
  return out;
}

}  // namespace

TheoremChainReport theorem_chain(std::shared_ptr<const BaseSystem> sys,
                                 std::shared_ptr<const PermutationFamily> perms,
                                 const ExactPoint& x, const TheoremChainOptions& options) {
  if (!sys) throw std::invalid_argument("theorem_chain: null base system");
  const int s = sys->dimensions();
  if (s < 2) throw std::invalid_argument("theorem_chain: needs s >= 2");

  TheoremChainReport report;

  // Resolve the position horizon.
  if (options.horizon) {
    report.horizon = *options.horizon;
  } else if (options.total_points) {
    const BigInt& n = *options.total_points;
    const BigInt q0(sys->max_radix());
    int mfrak = 0;
    while (pow_int(q0, static_cast<unsigned>(s * (mfrak + 2))) <= n) ++mfrak;
    if (mfrak < 1) {
      throw std::invalid_argument("theorem_chain: N = " + n.str() +
                                  " is too small for this base system (horizon < 1)");
    }
    report.horizon = mfrak;
  } else {
    throw std::invalid_argument("theorem_chain: needs either a horizon or a point count");
  }

  const WitnessPlan plan = select_tau(sys, perms, report.horizon);
  const WitnessBoxes boxes = build_boxes(plan, x);

  report.m = plan.m();
  report.base_product = plan.base_product();
  report.full_modulus = plan.full_modulus();
  report.start_index = boxes.start_index();
  report.start_offset = boxes.start_offset();
  report.n_given = options.total_points.has_value();
  report.n_effective = report.n_given ? *options.total_points : 2 * report.full_modulus;

  // Averaged discrepancy, both routes.
  const AveragedDiscrepancy closed = averaged_discrepancy_closed_form(plan, boxes);
  report.averaged_closed = closed.value;
  bool identities_ok = true;
  if (report.full_modulus <= options.enumeration_cap) {
    const AveragedDiscrepancy brute =
        averaged_discrepancy_bruteforce(plan, boxes, options.enumeration_cap);
    report.averaged_brute = brute.value;
    identities_ok = identities_ok && brute.value == closed.value &&
                    brute.per_box == closed.per_box;
  }

  report.lemma2 = lemma2_bound(plan);
  identities_ok = identities_ok && !report.lemma2.fraction_is_half &&
                  report.lemma2.half_distance_ok &&
                  (!report.lemma2.hypothesis_met || report.lemma2.bound_ok);

  // Windowed maximum, fast congruence path plus point-counting cross-check.
  const WindowedMax fast = windowed_max_weighted_discrepancy(
      plan, boxes, report.full_modulus, options.window_iteration_cap);
  report.window_max = fast.value;
  report.window_argmax = fast.argmax_len;
  if (report.full_modulus <= options.enumeration_cap) {
    const WindowedMax brute = windowed_max_bruteforce(plan, boxes, report.full_modulus,
                                                      options.enumeration_cap);
    report.window_max_brute = brute.value;
    identities_ok = identities_ok && brute.value == fast.value;
  }

  report.averaging_ok = abs(report.averaged_closed) <= report.window_max;
  identities_ok = identities_ok && report.averaging_ok;

  // Exact weighted star discrepancies. The window and decomposition prefixes
  // certify the chain; their maximum is a lower bound of the sup over all
  // prefix lengths.
  report.window_weighted = weighted_prefix_dstar(x, *perms, boxes.start_index(),
                                                 fast.argmax_len, options.star_eval_cap);
  if (report.window_weighted) {
    report.window_vs_dstar_ok = report.window_max <= report.window_weighted->weighted;
    identities_ok = identities_ok && *report.window_vs_dstar_ok;
  }

  std::vector<BigInt> prefix_lengths = {boxes.start_index(),
                                        boxes.start_index() + fast.argmax_len,
                                        report.n_effective};
  std::sort(prefix_lengths.begin(), prefix_lengths.end());
  prefix_lengths.erase(std::unique(prefix_lengths.begin(), prefix_lengths.end()),
                       prefix_lengths.end());
  for (const BigInt& len : prefix_lengths) {
    if (len <= 0 || len > report.n_effective) continue;
    if (auto eval = weighted_prefix_dstar(x, *perms, 0, len, options.star_eval_cap)) {
      report.prefix_weighted.push_back(std::move(*eval));
    }
  }
  if (!report.prefix_weighted.empty()) {
    Rational best = report.prefix_weighted.front().weighted;
    for (const WeightedDstar& w : report.prefix_weighted) {
      if (w.weighted > best) best = w.weighted;
    }
    report.prefix_weighted_best = best;
    report.chain_ok = report.window_max <= 2 * best;
    identities_ok = identities_ok && *report.chain_ok;
  }

  // Constants and hypothesis checks.
  report.constants = theorem_constants(s, sys->max_alphabet_size(), sys->max_radix());
  report.instance_c = instance_constant(report.constants, plan.base_product(), s);
  if (report.n_given) {
    const BigInt& n = *options.total_points;
    report.size_ok = 2 * report.full_modulus <= n;
    const Float50 log2n = log(Float50(n.str())) / log(Float50(2));
    report.log_hypothesis_ok =
        log2n >= 2 * pow(Float50(sys->max_radix()), s - 1) * report.constants.c1;
    report.bound_closed = pow(log2n, s) / report.constants.c_closed;
    report.bound_instance = 2 * pow(log2n, s) / report.instance_c;
  }

  report.identities_ok = identities_ok;
  return report;
}

}  // namespace hx

#include "haltonx/crt.hpp"

#include "haltonx/errors.hpp"
#include "haltonx/generator.hpp"
#include "haltonx/odometer.hpp"

#include <stdexcept>

namespace hx {

namespace {

void check_depths(const BaseSystem& sys, const DepthVector& depths) {
  if (static_cast<int>(depths.size()) != sys.dimensions()) {
    throw std::invalid_argument("depth vector size does not match dimension count");
  }
  for (int i = 0; i < sys.dimensions(); ++i) {
    const int r = depths[static_cast<std::size_t>(i)];
    if (r < 1 || r > sys.depth()) {
      throw HorizonError("depth " + std::to_string(r) + " outside [1, " +
                         std::to_string(sys.depth()) + "]");
    }
  }
}

}  // namespace

BigInt crt_cofactor(const BaseSystem& sys, int dim, const DepthVector& depths) {
  check_depths(sys, depths);
  if (dim < 0 || dim >= sys.dimensions()) throw std::invalid_argument("crt_cofactor: bad dimension");
  const BigInt& modulus = sys.cumulative(dim, depths[static_cast<std::size_t>(dim)]);
  BigInt others = 1;
  for (int j = 0; j < sys.dimensions(); ++j) {
    if (j == dim) continue;
    others = others * sys.cumulative(j, depths[static_cast<std::size_t>(j)]) % modulus;
  }
  return mod_inverse(others, modulus);
}

PrefixResidue index_from_prefix(const ExactPoint& x, const DepthVector& depths) {
  const BaseSystem& sys = x.system();
  check_depths(sys, depths);

  PrefixResidue out;
  out.depths = depths;
  out.modulus = 1;
  for (int i = 0; i < sys.dimensions(); ++i) {
    const int r = depths[static_cast<std::size_t>(i)];
    if (r > x.coord(i).depth()) {
      throw std::invalid_argument("index_from_prefix: depth exceeds stored digits");
    }
    out.modulus *= sys.cumulative(i, r);
  }

  out.residue = 0;
  out.cofactors.reserve(static_cast<std::size_t>(sys.dimensions()));
  for (int i = 0; i < sys.dimensions(); ++i) {
    const int r = depths[static_cast<std::size_t>(i)];
    const BigInt cof = crt_cofactor(sys, i, depths);
    const BigInt prefix_index = digits_to_index(sys, truncate(x.coord(i), r));
    out.residue += cof * (out.modulus / sys.cumulative(i, r)) % out.modulus * prefix_index;
    out.cofactors.push_back(cof);
  }
  out.residue = mod_floor(out.residue, out.modulus);
  return out;
}

bool prefix_consistency(const ExactPoint& x, const DepthVector& coarse, const DepthVector& fine) {
  if (coarse.size() != fine.size()) {
    throw std::invalid_argument("prefix_consistency: depth vector sizes differ");
  }
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (fine[i] < coarse[i]) {
      throw std::invalid_argument("prefix_consistency: fine depths must dominate coarse depths");
    }
  }
  const PrefixResidue a = index_from_prefix(x, coarse);
  const PrefixResidue b = index_from_prefix(x, fine);
  return mod_floor(b.residue - a.residue, a.modulus) == 0;
}

ShiftIdentityResult shift_identity_check(const ExactPoint& x, const DepthVector& depths,
                                         std::uint64_t n_max) {
  const BaseSystem& sys = x.system();
  const PrefixResidue w = index_from_prefix(x, depths);

  if (horizon_capacity(x, 0) <= BigInt(n_max)) {
    throw HorizonError("shift_identity_check: orbit of length " + std::to_string(n_max) +
                       " overflows the working depth");
  }

  ShiftIdentityResult result;
  OrbitStepper stepper(x);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    for (int i = 0; i < sys.dimensions(); ++i) {
      const int r = depths[static_cast<std::size_t>(i)];
      const DigitVector lhs = truncate(stepper.current().coord(i), r);
      // The depth-r prefix of the sequence point with index W + n is the
      // digit string of (W + n) mod the depth-r cumulative product.
      const DigitVector rhs =
          cantor_digits(sys, i, mod_floor(w.residue + n, sys.cumulative(i, r)), r);
      if (lhs != rhs) {
        result.ok = false;
        result.counterexample = BigInt(n);
        result.detail = "prefix mismatch in dimension " + std::to_string(i + 1) + " at n = " +
                        std::to_string(n);
        return result;
      }
    }
    if (n < n_max) stepper.advance();
  }
  return result;
}

}  // namespace hx

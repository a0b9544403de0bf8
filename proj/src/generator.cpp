#include "haltonx/generator.hpp"

#include "haltonx/errors.hpp"

#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hx {

ExactPoint scramble(const ExactPoint& x, const PermutationFamily& perms) {
  ensure_same_system(x.system(), perms.system());
  std::vector<DigitVector> coords;
  coords.reserve(static_cast<std::size_t>(x.dimensions()));
  for (int i = 0; i < x.dimensions(); ++i) {
    const DigitVector& d = x.coord(i);
    DigitVector out{i, std::vector<std::uint32_t>(d.digits.size())};
    for (int pos = 1; pos <= d.depth(); ++pos) {
      out.digits[static_cast<std::size_t>(pos - 1)] =
          perms.forward(i, pos, d.digits[static_cast<std::size_t>(pos - 1)]);
    }
    coords.push_back(std::move(out));
  }
  return ExactPoint(x.system_ptr(), std::move(coords));
}

ExactPoint halton_point(std::shared_ptr<const BaseSystem> sys, const BigInt& n, int depth) {
  if (!sys) throw std::invalid_argument("halton_point: null base system");
  const int r = depth < 0 ? sys->depth() : depth;
  std::vector<DigitVector> coords;
  coords.reserve(static_cast<std::size_t>(sys->dimensions()));
  for (int i = 0; i < sys->dimensions(); ++i) {
    coords.push_back(cantor_digits(*sys, i, n, r));
  }
  return ExactPoint(std::move(sys), std::move(coords));
}

namespace {

// Per-dimension start indices of x0's digit strings.
std::vector<BigInt> start_indices(const ExactPoint& x0) {
  std::vector<BigInt> idx;
  idx.reserve(static_cast<std::size_t>(x0.dimensions()));
  for (int i = 0; i < x0.dimensions(); ++i) {
    idx.push_back(digits_to_index(x0.system(), x0.coord(i)));
  }
  return idx;
}

ExactPoint orbit_point_at(const ExactPoint& x0, const std::vector<BigInt>& base_idx,
                          const BigInt& n) {
  const BaseSystem& sys = x0.system();
  std::vector<DigitVector> coords;
  coords.reserve(base_idx.size());
  for (int i = 0; i < x0.dimensions(); ++i) {
    coords.push_back(
        cantor_digits(sys, i, base_idx[static_cast<std::size_t>(i)] + n, x0.coord(i).depth()));
  }
  return ExactPoint(x0.system_ptr(), std::move(coords));
}

}  // namespace

BigInt horizon_capacity(const ExactPoint& x0, const BigInt& n0) {
  const BaseSystem& sys = x0.system();
  BigInt capacity = -1;
  for (int i = 0; i < x0.dimensions(); ++i) {
    const BigInt room =
        sys.cumulative(i, x0.coord(i).depth()) - digits_to_index(sys, x0.coord(i)) - n0;
    if (capacity < 0 || room < capacity) capacity = room;
  }
  return capacity < 0 ? BigInt(0) : capacity;
}

ExactPoint generalized_point(const BigInt& n, const ExactPoint& x0,
                             const PermutationFamily& perms) {
  if (n < 0) throw std::invalid_argument("generalized_point: negative index");
  ensure_same_system(x0.system(), perms.system());
  const std::vector<BigInt> base_idx = start_indices(x0);
  return scramble(orbit_point_at(x0, base_idx, n), perms);
}

std::vector<ExactPoint> generate_block(const BigInt& n0, std::uint64_t count,
                                       const ExactPoint& x0, const PermutationFamily& perms) {
  if (n0 < 0) throw std::invalid_argument("generate_block: negative start index");
  ensure_same_system(x0.system(), perms.system());
  if (count == 0) return {};

  if (horizon_capacity(x0, n0) < BigInt(count)) {
    throw HorizonError("generate_block: indices up to " + BigInt(n0 + count - 1).str() +
                       " overflow the working depth; reduce the block or raise 'depth'");
  }

  const std::vector<BigInt> base_idx = start_indices(x0);
  std::vector<ExactPoint> out;
  out.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    out.push_back(ExactPoint::origin(x0.system_ptr(), 0));  // placeholder, overwritten below
  }

  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (total >= 1024)
  for (std::int64_t j = 0; j < total; ++j) {
    out[static_cast<std::size_t>(j)] =
        scramble(orbit_point_at(x0, base_idx, n0 + j), perms);
  }
  return out;
}

}  // namespace hx

#pragma once

#include "haltonx/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hx {

// One dimension of a mixed-radix system: the alphabet of admissible radices
// and the rule assigning a radix to every digit position (explicit prefix
// followed by a repeating cycle).
struct DimensionSpec {
  std::vector<std::uint32_t> alphabet;
  std::vector<std::uint32_t> prefix;  // may be empty
  std::vector<std::uint32_t> cycle;   // never empty
};

// Immutable s-dimensional mixed-radix base system with a fixed working digit
// depth. Radices across distinct dimensions must be pairwise coprime;
// construction rejects violations. Cumulative radix products are cached to
// the working depth as arbitrary-precision integers.
class BaseSystem {
 public:
  static std::shared_ptr<const BaseSystem> create(std::vector<DimensionSpec> dims, int depth);

  // Convenience: one constant radix per dimension.
  static std::shared_ptr<const BaseSystem> constant(const std::vector<std::uint32_t>& bases,
                                                    int depth);

  int dimensions() const { return static_cast<int>(dims_.size()); }
  int depth() const { return depth_; }
  const DimensionSpec& dimension(int dim) const { return dims_.at(static_cast<std::size_t>(dim)); }

  // Radix of digit position `pos` (1-based, pos <= depth) in dimension `dim` (0-based).
  std::uint32_t radix(int dim, int pos) const;

  // Cumulative product of radices of positions 1..pos (pos in [0, depth]).
  const BigInt& cumulative(int dim, int pos) const;

  std::uint32_t max_radix() const { return max_radix_; }   // largest alphabet member anywhere
  int max_alphabet_size() const { return max_alphabet_; }  // largest per-dimension alphabet

  // Canonical configuration document; re-parses to an identical system.
  const std::string& canonical_text() const { return canonical_; }
  std::uint64_t digest() const { return digest_; }

 private:
  BaseSystem(std::vector<DimensionSpec> dims, int depth);

  std::vector<DimensionSpec> dims_;
  int depth_ = 0;
  std::vector<std::vector<std::uint32_t>> radix_;  // [dim][pos-1]
  std::vector<std::vector<BigInt>> cumulative_;    // [dim][pos], [dim][0] == 1
  std::uint32_t max_radix_ = 0;
  int max_alphabet_ = 0;
  std::string canonical_;
  std::uint64_t digest_ = 0;
};

// Parse the plain-text key-value configuration document:
//
//   dimensions = 2
//   depth = 16
//   alphabet.1 = 2
//   prefix.1 =
//   cycle.1 = 2
//   alphabet.2 = 3
//   cycle.2 = 3
//
// `cycle.i` defaults to `alphabet.i`, `prefix.i` defaults to empty.
std::shared_ptr<const BaseSystem> parse_base_system(const std::string& text);
std::shared_ptr<const BaseSystem> parse_base_system_file(const std::string& path);

}  // namespace hx

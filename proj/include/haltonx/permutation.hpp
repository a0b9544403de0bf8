#pragma once

#include "haltonx/base_system.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hx {

// Scrambling rules before resolution against a base system. Either the
// identity, or per-radix tables (one table reused at every position of that
// radix) optionally refined by explicit per-(dimension, position) tables.
struct PermutationConfig {
  std::map<std::uint32_t, std::vector<std::uint32_t>> per_radix;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> per_position;  // (dim 1-based, pos)

  bool empty() const { return per_radix.empty() && per_position.empty(); }
};

// One permutation of {0, ..., radix-1} per dimension and digit position,
// resolved to the working depth of a base system, with precomputed inverse
// tables and the difference residues used by the witness construction.
class PermutationFamily {
 public:
  static std::shared_ptr<const PermutationFamily> identity(
      std::shared_ptr<const BaseSystem> sys);
  static std::shared_ptr<const PermutationFamily> create(std::shared_ptr<const BaseSystem> sys,
                                                         const PermutationConfig& config);

  const BaseSystem& system() const { return *sys_; }
  const std::shared_ptr<const BaseSystem>& system_ptr() const { return sys_; }

  std::uint32_t forward(int dim, int pos, std::uint32_t digit) const;
  std::uint32_t inverse(int dim, int pos, std::uint32_t digit) const;

  // inverse(0) - inverse(1) reduced into {1, ..., radix-1}.
  std::uint32_t diff_residue(int dim, int pos) const;

  bool is_identity() const { return identity_; }

  // Family of the inverse permutations.
  std::shared_ptr<const PermutationFamily> inverted() const;

  const std::string& canonical_text() const { return canonical_; }
  std::uint64_t digest() const { return digest_; }

 private:
  PermutationFamily(std::shared_ptr<const BaseSystem> sys, const PermutationConfig& config,
                    bool invert);

  std::shared_ptr<const BaseSystem> sys_;
  bool identity_ = true;
  // [dim][pos-1][digit]; empty row means identity at that position.
  std::vector<std::vector<std::vector<std::uint32_t>>> fwd_, inv_;
  std::string canonical_;
  std::uint64_t digest_ = 0;
};

// Plain-text configuration:
//
//   family = identity
//
// or
//
//   family = tables
//   radix.3 = 1 0 2          # images sigma(0) sigma(1) sigma(2)
//   dim.1.pos.4 = 0 1        # explicit override for one position
std::shared_ptr<const PermutationFamily> parse_permutations(
    std::shared_ptr<const BaseSystem> sys, const std::string& text);
std::shared_ptr<const PermutationFamily> parse_permutations_file(
    std::shared_ptr<const BaseSystem> sys, const std::string& path);

}  // namespace hx

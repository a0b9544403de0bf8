#pragma once

#include "haltonx/generator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hx {

struct RenderOptions {
  bool exact = true;        // "num/den" cells; false renders decimals
  unsigned precision = 15;  // significant digits for decimal rendering
};

// CSV with a comment header carrying the config digests, then one row per
// point: index followed by one cell per coordinate. Byte-identical across
// runs with the same inputs.
void write_points_csv(std::ostream& out, const BaseSystem& sys, const PermutationFamily& perms,
                      const BigInt& start, const std::vector<ExactPoint>& points,
                      const RenderOptions& render);

// JSON document embedding the full resolved configuration.
void write_points_json(std::ostream& out, const BaseSystem& sys, const PermutationFamily& perms,
                       const BigInt& start, const std::vector<ExactPoint>& points,
                       const RenderOptions& render);

// Reads the CSV point format back (exact or decimal cells); the index column
// is optional. Lines starting with '#' and a leading "n,x1,..." header are
// skipped.
std::vector<std::vector<Rational>> read_points_csv(std::istream& in);

}  // namespace hx

#pragma once

#include "haltonx/rational.hpp"

#include <vector>

namespace hx {

// Product of half-open intervals [lower_i, upper_i) inside [0, 1]^s.
struct Box {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  int dimensions() const { return static_cast<int>(lower.size()); }
};

// Anchored box [0, y_1) x ... x [0, y_s).
Box anchored_box(std::vector<Rational> upper);

bool box_contains(const Box& box, const std::vector<Rational>& point);
Rational box_volume(const Box& box);

}  // namespace hx

#include "haltonx/box.hpp"

#include <stdexcept>

namespace hx {

Box anchored_box(std::vector<Rational> upper) {
  Box b;
  b.lower.assign(upper.size(), Rational(0));
  b.upper = std::move(upper);
  for (std::size_t i = 0; i < b.upper.size(); ++i) {
    if (b.upper[i] <= 0 || b.upper[i] > 1) {
      throw std::invalid_argument("anchored_box: upper bound outside (0, 1]");
    }
  }
  return b;
}

bool box_contains(const Box& box, const std::vector<Rational>& point) {
  if (point.size() != box.lower.size()) {
    throw std::invalid_argument("box_contains: dimension mismatch");
  }
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] < box.lower[i] || point[i] >= box.upper[i]) return false;
  }
  return true;
}

Rational box_volume(const Box& box) {
  Rational v = 1;
  for (std::size_t i = 0; i < box.lower.size(); ++i) {
    if (box.upper[i] < box.lower[i]) {
      throw std::invalid_argument("box_volume: interval upper bound below lower bound");
    }
    v *= box.upper[i] - box.lower[i];
  }
  return v;
}

}  // namespace hx

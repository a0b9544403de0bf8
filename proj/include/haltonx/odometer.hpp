#pragma once

#include "haltonx/digits.hpp"

#include <vector>

namespace hx {

// Add-one-with-carry on a single digit string: the lowest non-maximal digit
// is incremented and everything below it resets to zero. Throws HorizonError
// when every stored digit is maximal (the carry would escape the horizon).
void odometer_step_inplace(const BaseSystem& sys, DigitVector& d);
DigitVector odometer_step(const BaseSystem& sys, const DigitVector& d);

// Resumable coordinatewise iterator over the orbit of a start point.
// Single-owner while iterating; distinct steppers over the same (immutable)
// base system can run in parallel.
class OrbitStepper {
 public:
  explicit OrbitStepper(ExactPoint start) : current_(std::move(start)) {}

  const ExactPoint& current() const { return current_; }
  void advance();

 private:
  ExactPoint current_;
};

// Materialized orbit block [x, T(x), ..., T^{count-1}(x)].
std::vector<ExactPoint> odometer_orbit(const ExactPoint& start, std::uint64_t count);

}  // namespace hx

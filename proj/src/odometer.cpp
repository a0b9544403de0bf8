#include "haltonx/odometer.hpp"

#include "haltonx/errors.hpp"

namespace hx {

void odometer_step_inplace(const BaseSystem& sys, DigitVector& d) {
  for (int pos = 1; pos <= d.depth(); ++pos) {
    const std::size_t j = static_cast<std::size_t>(pos - 1);
    if (d.digits[j] + 1 < sys.radix(d.dim, pos)) {
      ++d.digits[j];
      for (std::size_t k = 0; k < j; ++k) d.digits[k] = 0;
      return;
    }
  }
  throw HorizonError("odometer carry past depth " + std::to_string(d.depth()) +
                     " in dimension " + std::to_string(d.dim + 1) +
                     " (all stored digits maximal)");
}

DigitVector odometer_step(const BaseSystem& sys, const DigitVector& d) {
  DigitVector out = d;
  odometer_step_inplace(sys, out);
  return out;
}

void OrbitStepper::advance() {
  for (int i = 0; i < current_.dimensions(); ++i) {
    odometer_step_inplace(current_.system(), current_.coord(i));
  }
}

std::vector<ExactPoint> odometer_orbit(const ExactPoint& start, std::uint64_t count) {
  std::vector<ExactPoint> orbit;
  orbit.reserve(count);
  OrbitStepper stepper(start);
  for (std::uint64_t n = 0; n < count; ++n) {
    orbit.push_back(stepper.current());
    if (n + 1 < count) stepper.advance();
  }
  return orbit;
}

}  // namespace hx

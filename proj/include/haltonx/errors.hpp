#pragma once

#include <stdexcept>
#include <string>

namespace hx {

// Malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A digit or carry operation ran past the configured working depth.
class HorizonError : public std::runtime_error {
 public:
  explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive enumeration would exceed its cap; never silently sampled.
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hx

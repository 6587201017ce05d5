#pragma once

#include <stdexcept>
#include <string>

namespace mfgf {

// Bad arguments: non-finite values, out-of-range levels, malformed sets.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The data break the exchangeable-and-continuous assumption an operation
// relies on (duplicate values, discrete generators).
class AssumptionViolated : public std::domain_error {
 public:
  explicit AssumptionViolated(const std::string& what) : std::domain_error(what) {}
};

// A focal region is empty because of tied scores.
class TiePathology : public std::runtime_error {
 public:
  explicit TiePathology(const std::string& what) : std::runtime_error(what) {}
};

// A focal region has infinite Lebesgue measure; bounds are needed.
class TruncationRequired : public std::runtime_error {
 public:
  explicit TruncationRequired(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mfgf

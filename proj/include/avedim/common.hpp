#pragma once

// Shared error taxonomy and resource limits.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace avedim {

// Precondition violations: bad inputs, broken invariants, unusable models.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Work refused because it would exceed a configured budget. The message
// always names the bound that was hit.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Floating point breakdown: non-finite values, failed convergence.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Limits {
  std::uint64_t word_budget = std::uint64_t{1} << 20;   // admissible words per enumeration
  std::uint64_t point_budget = std::uint64_t{1} << 23;  // points per sampled cloud
};

}  // namespace avedim

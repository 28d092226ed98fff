#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Bad input values (out-of-range index, non-unit normal, bad grid size).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation point outside the domain of a formula (x = 0, xi = 0, xi parallel to n).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InversionError : std::runtime_error {
  InversionError(const std::string& what, double sigma_min_)
      : std::runtime_error(what), sigma_min(sigma_min_) {}
  double sigma_min;
};

// Requested feature is not available for this mesh kind or order.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace steklov

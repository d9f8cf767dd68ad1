#pragma once

#include <stdexcept>
#include <string>

namespace levylab {

/// A parameter lies outside the set where the requested quantity is defined
/// (for example the long-time functional for s >= 1/2, where it diverges).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach its tolerance. Carries the best
/// estimate so callers can still report it.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_value, double best_error)
      : std::runtime_error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

}  // namespace levylab

namespace levylab {

/// An output file could not be written.
class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levylab

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cfou {

// Argument outside the admissible range (validation failures).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or extrapolation failed to reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, std::complex<double> estimate, double bound)
      : std::runtime_error(what), estimate_(estimate), bound_(bound) {}
  std::complex<double> estimate() const { return estimate_; }
  double bound() const { return bound_; }

 private:
  std::complex<double> estimate_;
  double bound_;
};

// Circulant embedding not nonnegative and no fallback allowed.
class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero denominators, singular covariances, constant samples.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfou

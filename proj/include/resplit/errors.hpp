#pragma once

#include <stdexcept>
#include <string>

namespace resplit {

// Index outside the retained Fourier range of a frequency model.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Invalid numerical parameter (nonpositive step, cut-off, grid size, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation needs a multi-index of larger length.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Root bracket without a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed-form datum hits a pole on a collocation point.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Implicit midpoint fixed-point solve did not converge.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long step, int iterations, double residual);

  long step() const noexcept { return step_; }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  long step_;
  int iterations_;
  double residual_;
};

}  // namespace resplit

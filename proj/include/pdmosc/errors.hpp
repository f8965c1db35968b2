#pragma once

#include <stdexcept>
#include <string>

namespace pdmosc {

/// Model evaluated outside its domain of validity (e.g. non-positive mass).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix dimension mismatch or an undersized basis.
class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A basis index fell outside the trusted block of a truncated operator.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Input to the eigensolver failed the hermiticity check.
class NotHermitianError : public std::runtime_error {
 public:
  NotHermitianError(const std::string& msg, double defect_)
      : std::runtime_error(msg), defect(defect_) {}
  double defect;
};

/// Truncation refinement did not settle below the convergence threshold.
class NotConvergedError : public std::runtime_error {
 public:
  NotConvergedError(const std::string& msg, double estimate_)
      : std::runtime_error(msg), estimate(estimate_) {}
  double estimate;
};

/// Polynomial fit residual exceeded the requested tolerance.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& msg, double residual_)
      : std::runtime_error(msg), residual(residual_) {}
  double residual;
};

/// Integrator produced a non-finite state.
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdmosc

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhc {

// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error {
  using Error::Error;
};

// An iterative solve ran out of budget. Carries the best point found so
// the caller can report it.
struct NoConvergenceError : Error {
  NoConvergenceError(const std::string& msg, double best, std::vector<double> point = {})
      : Error(msg), best_value(best), best_point(std::move(point)) {}
  double best_value;
  std::vector<double> best_point;
};

struct IllConditionedError : Error {
  IllConditionedError(const std::string& msg, double smallest, double largest)
      : Error(msg), sigma_min(smallest), sigma_max(largest) {}
  double sigma_min;
  double sigma_max;
};

struct BadPositionsError : Error {
  using Error::Error;
};

struct AtomNotInCellError : Error {
  using Error::Error;
};

struct MissingScheduleError : Error {
  MissingScheduleError(const std::string& msg, std::string missing_label)
      : Error(msg), label(std::move(missing_label)) {}
  std::string label;
};

// The principal logarithm is not well defined: two nearly equal eigenvalues
// sit on opposite sides of the branch cut at -1.
struct BranchAmbiguityError : Error {
  BranchAmbiguityError(const std::string& msg, std::complex<double> a, std::complex<double> b)
      : Error(msg), lambda_a(a), lambda_b(b) {}
  std::complex<double> lambda_a;
  std::complex<double> lambda_b;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace nhc

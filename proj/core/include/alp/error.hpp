#pragma once

#include <stdexcept>
#include <string>

namespace alp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (configuration, mesh text, arguments).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects that must live on the same mesh (or share a dimension) do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Base class of failures raised by the numerical kernels.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class EigenSolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LinearSolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficiencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedError : public NumericalError {
 public:
  IllConditionedError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// The reconstruction tolerance could not be met below the largest allowed chi.
class CalibrationError : public NumericalError {
 public:
  CalibrationError(const std::string& what, double best_chi, double best_error)
      : NumericalError(what), best_chi_(best_chi), best_error_(best_error) {}
  double best_chi() const noexcept { return best_chi_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_chi_;
  double best_error_;
};

}  // namespace alp

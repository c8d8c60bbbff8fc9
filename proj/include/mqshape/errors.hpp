#pragma once

#include <stdexcept>
#include <string>

namespace mqshape {

/// Base of every error raised by the library. Each category maps to one
/// process exit code in the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or problem instance (bad beta, c <= 0, empty range...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request that is inconsistent with the configured mode or regime.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input: CSV rows, duplicate nodes, missing files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, overflow, or a search that failed to bracket.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The interpolation matrix is numerically singular.
class ConditioningError : public NumericError {
 public:
  ConditioningError(const std::string& what, double condition)
      : NumericError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// An admissibility requirement on the fill distance is violated.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double bound)
      : Error(what), bound_(bound) {}
  /// The violated bound (b0/(4 gamma_n (m+1)) or delta_0), when known.
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

}  // namespace mqshape

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace waring {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The SU(2) preimage search ran out of budget. threshold() is the least
/// rank found to succeed in a follow-up scan, or -1 if none was found.
class PreimageBudgetError : public ConvergenceError {
 public:
  PreimageBudgetError(const std::string& what, int rank, int threshold)
      : ConvergenceError(what), rank_(rank), threshold_(threshold) {}
  int rank() const noexcept { return rank_; }
  int threshold() const noexcept { return threshold_; }

 private:
  int rank_;
  int threshold_;
};

/// Raised when group-theoretic preconditions fail (non-conjugate inputs, parity obstruction, ...).
class GroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace waring

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad partition, label that does not resolve, distribution
/// that does not sum to one, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed one of the configured caps.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A closed-loop system has zero or several solutions where exactly one was
/// required.
class NotSolvable : public Error {
 public:
  enum class Kind { no_solution, multiple_solutions };

  NotSolvable(Kind kind, std::size_t cardinality, const std::string& what)
      : Error(what), kind_(kind), cardinality_(cardinality) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t cardinality() const noexcept { return cardinality_; }

 private:
  Kind kind_;
  std::size_t cardinality_;
};

/// A certificate (causality, perfect recall) that an operation depends on is
/// missing.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace wgame

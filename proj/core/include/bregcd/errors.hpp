#pragma once

#include <stdexcept>
#include <string>

namespace bregcd {

/// A point violated the domain of a reference function or objective.
/// `index` identifies the offending component (or matrix row), -1 if n/a.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, long index = -1)
      : std::runtime_error(index >= 0 ? what + " (component " + std::to_string(index) + ")"
                                      : what),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

/// The Bregman proximal subproblem has no minimizer (objective unbounded below).
class UnboundedSubproblemError : public std::runtime_error {
 public:
  UnboundedSubproblemError(const std::string& what, long index = -1)
      : std::runtime_error(index >= 0 ? what + " (component " + std::to_string(index) + ")"
                                      : what),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad user-facing configuration (CLI flags, experiment configs).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bregcd

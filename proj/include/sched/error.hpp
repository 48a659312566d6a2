#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sched {

enum class ErrorKind {
  kCyclicPrecedence,
  kIndexOutOfRange,
  kPositionOutOfRange,
  kNotABijection,
  kInstanceTooLarge,
  kInfeasible,
  kNotASubset,
  kSetTooLarge,
  kContradictoryBranch,
  kInternalInconsistency,
  kInvalidConfig,
  kMalformedInput,
};

const char* to_string(ErrorKind kind);

/// The single exception type thrown by the library; kind() tells callers
/// which contract was violated.
class SchedError : public std::runtime_error {
 public:
  SchedError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the precedence input contains a cycle; carries one cycle
/// as a closed walk u0 -> u1 -> ... -> u0 (first vertex repeated at the end).
class CyclicPrecedenceError : public SchedError {
 public:
  explicit CyclicPrecedenceError(std::vector<int> cycle);
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

}  // namespace sched

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace locallim {

// Malformed edge-list input. `line` is 1-based; 0 when the problem is not
// tied to one line (e.g. edge count mismatch at end of input).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A caller broke an operation's precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A rejection loop or enumeration ran out of budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::int64_t attempts, double leftover = 0.0)
      : std::runtime_error(what), attempts_(attempts), leftover_(leftover) {}
  std::int64_t attempts() const noexcept { return attempts_; }
  // Probability mass not reached by an enumeration that gave up.
  double leftover() const noexcept { return leftover_; }

 private:
  std::int64_t attempts_;
  double leftover_;
};

// The requested class of graphs has no members.
class EmptyClassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ball exceeds the configured size limit of the canonical coder.
class OversizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (regime, root policy) pair not covered by any known limit theorem.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad experiment configuration or unknown suite id.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace locallim

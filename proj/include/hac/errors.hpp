#pragma once

#include <stdexcept>
#include <string>

namespace hac {

// Caller violated an operation's preconditions (bad cluster ids, wrong
// topology, non-positive weight where one is required, ...).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. line == 0 means "no line information".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// An instance is too large for the requested construction (e.g. unit-size
// expansion past the configured node budget).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hac

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpsgraph {

// Malformed graph construction: unknown vertex, bad name, zero multiplicity.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force routine was asked to handle more than its documented bound.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An operation's precondition does not hold (out-of-range parameter,
// non-closed vertex set, mismatched algebras, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  // line 0: the problem concerns the whole document.
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qpsgraph

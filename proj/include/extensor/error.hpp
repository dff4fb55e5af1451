#pragma once

#include <stdexcept>
#include <string>

namespace extensor {

// Malformed or out-of-contract input. CLI exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text-format diagnostic with its location. line is 1-based.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& msg)
      : InputError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Refusal to run a search whose size exceeds a configured bound. CLI exit
// code 2.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void internal_failure(const std::string& what) {
  throw std::logic_error("internal invariant violated: " + what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

}  // namespace detail
}  // namespace extensor

#pragma once

#include <stdexcept>
#include <string>

namespace satnum {

/// Base of every domain error raised by the library. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimacsError : public Error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A solver or reduction was handed a formula outside its fragment.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured variable cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a model was given an unsatisfiable formula.
class UnsatError : public Error {
 public:
  using Error::Error;
};

/// A family spec asks for more insertions than the chain clauses can hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Chain aggregation left a non-candidate variable with a nonzero coefficient.
class CancellationError : public Error {
 public:
  CancellationError(int var, const std::string& what) : Error(what), var_(var) {}
  int var() const { return var_; }

 private:
  int var_;
};

/// Fourier-Motzkin produced more rows than the configured limit.
class BlowupError : public Error {
 public:
  BlowupError(std::size_t limit, std::size_t step, std::size_t rows)
      : Error("row limit " + std::to_string(limit) + " exceeded at elimination step " +
              std::to_string(step) + " (" + std::to_string(rows) + " rows)"),
        limit_(limit),
        step_(step) {}
  std::size_t limit() const { return limit_; }
  std::size_t step() const { return step_; }

 private:
  std::size_t limit_;
  std::size_t step_;
};

}  // namespace satnum

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arcat {

/// Input that cannot be parsed or is structurally malformed (CLI exit code 1).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A mathematical precondition does not hold (CLI exit code 2).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The radical algorithm needs char 0 or p > the dimension it works in.
class FieldTooSmall : public PreconditionError {
 public:
  FieldTooSmall(std::uint32_t p, std::size_t dim)
      : PreconditionError("field F_" + std::to_string(p) +
                          " too small for the radical computation: need a prime p > " +
                          std::to_string(dim)),
        required_(dim) {}
  std::size_t required_above() const { return required_; }

 private:
  std::size_t required_;
};

/// A module that was required to have no projective direct summand has one.
class ProjectiveSummandError : public PreconditionError {
 public:
  explicit ProjectiveSummandError(const std::string& object)
      : PreconditionError("module has the indecomposable projective P_" + object +
                          " as a direct summand"),
        object_(object) {}
  const std::string& object() const { return object_; }

 private:
  std::string object_;
};

/// A produced certificate failed to verify (CLI exit code 3). Always a bug or bad input data.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arcat

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mebkit {

// Base of every error thrown by the library. `kind()` is a stable tag used in
// machine-readable error payloads.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "dimension_mismatch"; }
};

// Affinely dependent input where independence is required. Carries the
// indices (into the caller's point set) of the offending subset.
class DegenerateInput : public Error {
 public:
  DegenerateInput(const std::string& what, std::vector<std::size_t> subset)
      : Error(what), subset_(std::move(subset)) {}
  const char* kind() const noexcept override { return "degenerate_input"; }
  const std::vector<std::size_t>& subset() const noexcept { return subset_; }

 private:
  std::vector<std::size_t> subset_;
};

// An enumeration or search budget would be exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "guard_exceeded"; }
};

// An iterative method did not converge. Subclasses carry the best iterate.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  const char* kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mebkit

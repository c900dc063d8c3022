#pragma once

#include <stdexcept>

namespace favard {

// Malformed or unusable input: unreadable config, bad family parameters,
// violated call preconditions (singular basis-change matrix, zero direction
// vector, degree out of range).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that parses but fails mathematical validation: insufficient moment
// degree, a Gram assembly that is not positive semidefinite, an invalid
// moment sequence.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural identity that must hold by construction failed. Indicates a
// bug or inconsistent internal state, never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace favard

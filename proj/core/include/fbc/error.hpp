#pragma once

#include <stdexcept>
#include <string>

namespace fbc {

/// Malformed or inconsistent user input (exit code 1 in the CLI).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input that is well formed but outside the domain an algorithm handles,
/// e.g. non-isolated periodic points.
class DegenerateInput : public InputError {
public:
  using InputError::InputError;
};

/// A violated precondition or internal invariant (exit code 2 in the CLI).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

inline void expect(bool cond, const std::string& what) {
  if (!cond) throw ContractError(what);
}

} // namespace fbc

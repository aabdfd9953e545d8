#pragma once

#include <stdexcept>

namespace cpnet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition or invariant.
struct ValidationError : Error {
  using Error::Error;
};

struct NotASwap : ValidationError {
  using ValidationError::ValidationError;
};

struct DomainError : ValidationError {
  using ValidationError::ValidationError;
};

struct NotMaximal : ValidationError {
  using ValidationError::ValidationError;
};

struct InfeasibleParameters : ValidationError {
  using ValidationError::ValidationError;
};

struct UniversalSetTooWeak : ValidationError {
  using ValidationError::ValidationError;
};

// Raised when an explicit search or enumeration would exceed its configured limit.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Raised by learners when oracle answers cannot come from any target in the class.
struct OracleContradiction : Error {
  using Error::Error;
};

struct NoParentFound : Error {
  using Error::Error;
};

struct MajorityTie : Error {
  using Error::Error;
};

}  // namespace cpnet

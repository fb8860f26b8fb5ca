#pragma once

#include <stdexcept>
#include <string>

namespace tsview {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point budget below the algorithm's minimum.
class InvalidBudget : public Error {
 public:
  using Error::Error;
};

// Input violates a structural invariant (unsorted timestamps, bad range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Duplicate trace id.
class ConflictError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Malformed CSV cell or protocol message.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsview

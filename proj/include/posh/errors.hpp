#pragma once

#include <stdexcept>
#include <string>

namespace posh {

// Base for every error raised by the library. The CLI maps subclasses to
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class CombinatorialBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class TermCountExceeded : public Error {
 public:
  using Error::Error;
};

class BadBracket : public Error {
 public:
  using Error::Error;
};

class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

class Inconclusive : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace posh

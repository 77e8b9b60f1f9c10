#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

// Base of every typed error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

// A resource cap (pairs, basis size, term arena) was hit. Callers turn this
// into a budget-exceeded verdict instead of failing.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hankel

#pragma once

#include <stdexcept>
#include <string>

namespace tropsev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input supplied by a caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A series is zero up to its truncation order, so its valuation is unknown.
class ValuationUndetermined : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NonGenericWeight : public Error {
 public:
  using Error::Error;
};

class ExceptionalTranslation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tropsev

#pragma once

#include <stdexcept>
#include <string>

namespace ruelle {

/// Base class for every failure raised by the library. Configuration and
/// argument problems use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No power of the matrix up to the Wielandt bound is entrywise positive.
/// zero_row / zero_col are the first all-zero row / column (1-based), or 0.
class NotAperiodic : public Error {
 public:
  NotAperiodic(const std::string& what, int zero_row = 0, int zero_col = 0)
      : Error(what), zero_row(zero_row), zero_col(zero_col) {}
  int zero_row;
  int zero_col;
};

class DepthTooLarge : public Error {
 public:
  using Error::Error;
};

class InadmissibleJunction : public Error {
 public:
  using Error::Error;
};

class NotInSpace : public Error {
 public:
  using Error::Error;
};

class NoAnalyticBound : public Error {
 public:
  using Error::Error;
};

class ProfileViolation : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class EigensolveFailure : public Error {
 public:
  using Error::Error;
};

class RTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace ruelle

#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

// Argument outside the mathematical domain of an operation (|c| > 1, bad bit, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed-form expression evaluated at a pole (non-positive Fisher denominator).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Too few samples or runs for a statistic to be meaningful.
class InsufficientSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration requested beyond its supported size.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Invalid experiment configuration; maps to CLI exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonlocal

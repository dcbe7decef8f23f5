#pragma once

#include <stdexcept>
#include <string>

namespace ratioseq {

// A sieve-backed lookup went past what the table was built for. The caller
// must rebuild with a larger limit; there is no slow fallback path.
class TableTooSmallError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Fewer data points than the operation needs (e.g. a fit over < 2 points).
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed result violated a structural invariant (odd accepted ratio,
// undersized sieve after bound-based allocation, ...).
class InvariantViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ratioseq

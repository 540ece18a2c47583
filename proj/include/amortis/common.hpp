#pragma once

#include <stdexcept>
#include <string>

namespace amortis {

/// Raised when an argument violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a parameter cannot be recovered from a table (rank-deficient
/// regressors, no sign change in a root bracket).
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive range of loan durations in years, visited every `step` years.
struct YearRange {
  int first = 20;
  int last = 60;
  int step = 1;

  void validate() const;
  int count() const { return (last - first) / step + 1; }
};

inline constexpr int kMonthsPerYear = 12;

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace detail
}  // namespace amortis

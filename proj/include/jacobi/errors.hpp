#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobi {

/// Argument outside the mathematical domain of an operation (k <= 0, |w| >= 1, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A Pochhammer denominator vanished inside a terminating series.
class PoleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Truncated sum or table whose tail estimate exceeds the requested tolerance.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Accumulated drift of a group invariant (e.g. |a|^2 - |b|^2 = 1).
class DriftError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numeric overflow or non-finite input to a dense matrix routine.
class OverflowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics (truncation warnings, branch ambiguity). The default
// handler writes to stderr; tests and the CLI install their own.
using WarningHandler = std::function<void(std::string_view)>;

WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Short "%.6g" rendering for diagnostics.
std::string format_number(double x);

} // namespace jacobi

#pragma once

#include "jacobi/errors.hpp"
#include "jacobi/numerics.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace testing {

using jacobi::cplx;

inline double rel_err(cplx got, cplx want) {
  const double d = std::abs(got - want);
  return std::abs(want) > 0.0 ? d / std::abs(want) : d;
}

inline double rel_err(double got, double want) {
  const double d = std::abs(got - want);
  return want != 0.0 ? d / std::abs(want) : d;
}

// Collects warnings for the lifetime of the object.
class WarningCapture {
public:
  WarningCapture()
      : previous_(jacobi::set_warning_handler([this](std::string_view m) { messages.emplace_back(m); })) {}
  ~WarningCapture() { jacobi::set_warning_handler(std::move(previous_)); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

private:
  jacobi::WarningHandler previous_;
};

} // namespace testing

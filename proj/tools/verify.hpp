#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jacobi::cli {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::optional<double> k;   // restrict suites that sweep k
  std::optional<double> tol; // override the per-suite tolerance
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  int oracle_warnings = 0; // truncation warnings raised by the oracles, counted not printed
  nlohmann::ordered_json worst_case; // input of the worst check, for reproduction
};

const std::vector<std::string>& suite_names();
/// Runs one named suite; "all" is expanded by the caller.
VerifyReport run_suite(const std::string& name, const VerifyOptions& options);

nlohmann::ordered_json to_json(const VerifyReport& report);

} // namespace jacobi::cli

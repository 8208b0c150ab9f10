// The thirteen end-to-end checks, shared by the CLI and the acceptance test.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "thetakit/json_io.hpp"

namespace thetakit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string summary;  // one line, the measured quantities
  Json details;
};

struct AcceptanceOptions {
  std::uint64_t seed = 7;
  std::set<int> only;  // empty runs all
};

inline constexpr int kCriterionCount = 13;

const std::vector<std::string>& criterion_names();

/// Runs the selected criteria in order. Exceptions inside a criterion are
/// recorded as failures, never propagated.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);
CriterionResult run_criterion(int id, std::uint64_t seed);

Json to_json(const CriterionResult& r);
Json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

}  // namespace thetakit

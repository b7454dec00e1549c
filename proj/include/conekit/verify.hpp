#pragma once

// Seeded property suites, one per identity or equivalence of the mapping-cone
// calculus. Identity suites assert residual bounds; suites over semidecidable
// claims assert non-contradiction (no decided In against a decided Out).
//
// Trial t of suite s with base seed b runs with
//     split_seed(b ^ fnv1a(s), t)
// so a failure can be replayed from its recorded seed alone, and trial-level
// parallelism never changes the report.

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/block_positive.hpp"
#include "conekit/config.hpp"
#include "json.hpp"

namespace conekit {

struct SuiteFailure {
  std::uint64_t seed = 0;
  std::string description;
  std::string inputs;  // serialized JSON
};

struct SuiteReport {
  std::string suite_id;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string assertion_style;  // "residual" or "non-contradiction"
  std::vector<SuiteFailure> failures;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;
  bool pass = true;
};

class UnknownSuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// L3 L4a L4b T1 C9 CHOI TT T10 T11 R9 R-DEC
const std::vector<std::string>& suite_ids();

std::uint64_t trial_seed(const std::string& suite_id, std::uint64_t base,
                         int trial);

SuiteReport run_suite(const std::string& suite_id, int n, int trials,
                      std::uint64_t seed,
                      Execution exec = Execution::Parallel,
                      const OracleConfig& cfg = {});

/// Runs a single trial from its derived seed (for replaying failures).
std::vector<SuiteFailure> replay_trial(const std::string& suite_id, int n,
                                       std::uint64_t trial_seed,
                                       const OracleConfig& cfg = {});

nlohmann::json suite_report_to_json(const SuiteReport& r,
                                    bool include_timing = true);

/// Failures only, serialized; equal across reruns with the same seed.
std::string failures_fingerprint(const SuiteReport& r);

}  // namespace conekit

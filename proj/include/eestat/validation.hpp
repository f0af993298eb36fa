#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eestat {

class SeededRng;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values
  double seconds = 0.0;
};

struct ValidationConfig {
  bool quick = false;  // reduced sample sizes; the full suite uses the acceptance sizes
  std::uint64_t seed = 20240611;
  int workers = 0;     // 0: default_workers()
  double oracle_offset = 0.0;  // added to the closed-form oracle constants; nonzero only in sensitivity tests
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const ValidationConfig& cfg);
/// Runs criteria 1..13 in order; `on_result` sees each result as soon as it is ready.
std::vector<CriterionResult> run_validation(const ValidationConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Von Neumann entropy of a Haar-random state in the N-boson sector of V modes,
/// split after the first VA modes.
double sample_bosonic_sector_entropy(int V, int VA, int N, SeededRng& rng);

}  // namespace eestat

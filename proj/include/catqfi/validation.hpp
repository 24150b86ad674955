#pragma once

// Randomized agreement checks between the coherent-state engine and the
// truncated Fock-space oracle at small amplitudes.

#include <cstdint>
#include <string>
#include <vector>

namespace catqfi {

struct OracleComparison {
  std::string quantity;  // purity, fidelity, weight, qfi
  std::string label;     // case description
  double engine = 0.0;
  double oracle = 0.0;
  double error = 0.0;  // |engine - oracle| / max(|oracle|, 1)
};

struct OracleReport {
  int cases = 0;
  double tolerance = 0.0;
  std::vector<OracleComparison> worst;     // one entry per quantity
  std::vector<OracleComparison> failures;  // every comparison above tolerance

  bool passed() const { return failures.empty(); }
  double max_error() const;
};

struct OracleSuiteOptions {
  int cases = 60;
  std::uint64_t seed = 20240611;
  double max_amplitude = 2.5;
  double tolerance = 1e-6;
};

/// Cycles through coherent, even, odd, HHG and random three-term states with
/// random eta and LO. Cat families go through their closed-form mixtures,
/// the random states through the generic spectral decomposition.
OracleReport run_oracle_suite(const OracleSuiteOptions& opts = {});

}  // namespace catqfi

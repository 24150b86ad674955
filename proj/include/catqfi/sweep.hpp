#pragma once

// Parameter sweeps over (eta, chi, <N>) grids with deterministic CSV output.

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catqfi/cat_states.hpp"

namespace catqfi {

enum class Experiment {
  purity,
  fidelity,
  qfi_ratio,
  qfi_map,
  chi_derivative,
  pure_qfi,
  loss_sensitivity,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

/// Evenly spaced points min..max inclusive; count == 1 yields {min}.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  static Grid single(double v) { return {v, v, 1}; }
  /// "a:b:n" or a single number. Throws ConfigError.
  static Grid parse(std::string_view text);

  std::vector<double> points() const;
  std::string to_string() const;
};

struct SweepSpec {
  Experiment experiment = Experiment::purity;
  double alpha = 10.0;                // even/odd amplitude
  std::optional<double> hhg_alpha;    // defaults to alpha - delta_alpha
  double delta_alpha = -0.5;
  std::optional<Parity> parity;       // restrict the even/odd families
  std::optional<double> mean_photon;  // match every family to this <N>
  Grid eta_grid{0.0, 1.0, 501};
  Grid chi_grid = Grid::single(0.0);
  Grid photon_grid{4.0, 100.0, 97};
  double lo_mag = 10.0;
  bool lo_loss = true;
  std::string out_path;  // empty: stdout

  /// Default grids and parameters for the given experiment.
  static SweepSpec defaults(Experiment e);

  double effective_hhg_alpha() const { return hhg_alpha.value_or(alpha - delta_alpha); }

  /// Throws ConfigError on empty grids or out-of-domain bounds.
  void validate() const;
};

/// One CSV record. Absent optionals print as empty fields.
struct SweepRow {
  std::string experiment;
  std::string state;
  double alpha = 0.0;
  std::optional<double> delta_alpha;
  std::optional<double> eta;
  std::optional<double> chi;
  std::optional<double> lo_mag;
  double value = 0.0;
  std::optional<double> value2;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,state,alpha,delta_alpha,eta,chi,lo_mag,value,value2";

/// Rows in grid order (state, then eta or <N>, then chi). Points may be
/// evaluated on up to `threads` workers (0: hardware concurrency); output
/// order does not depend on it. A failing point aborts with a NumericError
/// naming that point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// %.17g-style float formatting, '.' decimal separator.
std::string format_double(double v);
std::string format_row(const SweepRow& row);
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Worker count from CATQFI_THREADS, capped by hardware concurrency; 0 if unset.
unsigned thread_cap_from_env();

}  // namespace catqfi

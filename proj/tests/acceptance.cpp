// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any selected criterion fails. `--only NAME` runs a single criterion.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "catqfi/cat_states.hpp"
#include "catqfi/metrics.hpp"
#include "catqfi/qfi_engine.hpp"
#include "catqfi/validation.hpp"

using namespace catqfi;

namespace {

constexpr double kPi = std::numbers::pi;

const CatParams kHhg = CatParams::hhg(10.5, -0.5);
const CatParams kOdd = CatParams::odd(10.0);
const CatParams kEven = CatParams::even(10.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit = 0.0;  // seconds; 0 = none
  std::function<Outcome()> run;
};

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

Outcome fidelity_crossover() {
  auto gap = [](double eta) { return lossy_fidelity(kHhg, eta) - lossy_fidelity(kOdd, eta); };
  // Bracket on the sweep grid, then bisect.
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int i = 1; i < 500 && !found; ++i) {
    const double a = i / 500.0;
    const double b = (i + 1) / 500.0;
    if (gap(a) * gap(b) <= 0.0 && gap(a) != gap(b)) {
      lo = a;
      hi = b;
      found = true;
    }
  }
  if (!found) return {false, "no sign change of F_hhg - F_odd on (0, 1)"};
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(lo) * gap(mid) <= 0.0 ? hi : lo) = mid;
  }
  const double eta = 0.5 * (lo + hi);
  const double even_gap = lossy_fidelity(kEven, eta) - lossy_fidelity(kOdd, eta);
  return {within(eta, 0.469, 0.002) && std::abs(even_gap) < 1e-12,
          fmt::format("crossover eta = {:.6f} (target 0.469 +- 0.002)", eta)};
}

Outcome small_loss_purity() {
  const double ge = lossy_purity(kEven, 0.983);
  const double go = lossy_purity(kOdd, 0.983);
  const double gh = lossy_purity(kHhg, 0.983);
  return {within(ge, 0.5, 0.01) && within(go, 0.5, 0.01) && within(gh, 0.97, 0.01),
          fmt::format("eta=0.983: even {:.5f}, odd {:.5f} (target 0.50), hhg {:.5f} (target 0.97)", ge,
                      go, gh)};
}

Outcome small_loss_fidelity() {
  const double fe = lossy_fidelity(kEven, 0.965);
  const double fo = lossy_fidelity(kOdd, 0.965);
  const double fh = lossy_fidelity(kHhg, 0.965);
  return {within(fe, 0.5, 0.01) && within(fo, 0.5, 0.01) && within(fh, 0.97, 0.01),
          fmt::format("eta=0.965: even {:.5f}, odd {:.5f} (target 0.50), hhg {:.5f} (target 0.97)", fe,
                      fo, fh)};
}

Outcome qfi_robustness() {
  const double rh = qfi_ratio(kHhg, 0.99, kPi / 2);
  const double ro = qfi_ratio(kOdd, 0.99, kPi / 2);
  return {within(rh, 0.975, 0.005) && within(ro, 0.741, 0.005),
          fmt::format("eta=0.99, chi=pi/2: hhg {:.5f} (target 0.975), odd {:.5f} (target 0.741)", rh, ro)};
}

Outcome pure_qfi_gain() {
  double worst = 0.0;
  double worst_n = 0.0;
  double worst_ratio = 0.0;
  for (double n : {50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 400.0, 1e4}) {
    const double a_odd = match_amplitude_for_photon_number(n, StateFamily::odd);
    const double a_hhg = match_amplitude_for_photon_number(n, StateFamily::hhg, -0.5);
    const double ratio = pure_qfi(CatParams::hhg(a_hhg, -0.5), 0.0, a_odd) /
                         pure_qfi(CatParams::odd(a_odd), 0.0, a_odd);
    if (std::abs(ratio - 1.88) >= worst) {
      worst = std::abs(ratio - 1.88);
      worst_n = n;
      worst_ratio = ratio;
    }
  }
  return {worst <= 0.02, fmt::format("F_hhg/F_odd over <N> in [50, 1e4]: worst {:.5f} at <N>={} (target 1.88 +- 0.02)",
                                     worst_ratio, worst_n)};
}

Outcome chi_insensitivity() {
  double worst = 0.0;
  double worst_chi = 0.0;
  double worst_eta = 0.0;
  for (double eta : {0.99, 0.9}) {
    for (int i = 0; i < 360; ++i) {
      const double chi = 2.0 * kPi * i / 360;
      const double d = std::abs(chi_derivative(kHhg, eta, chi));
      if (d > worst) {
        worst = d;
        worst_chi = chi;
        worst_eta = eta;
      }
    }
  }
  return {worst < 1e-3, fmt::format("max |d/dchi F_hhg(eta)/F_hhg| = {:.3e} at eta={}, chi={:.4f} (limit 1e-3)",
                                    worst, worst_eta, worst_chi)};
}

Outcome hhg_alpha_independence() {
  const double ref = lossy_purity(CatParams::hhg(10.5, -0.5), 0.8);
  double spread = 0.0;
  for (double a : {5.0, 20.0}) spread = std::max(spread, std::abs(lossy_purity(CatParams::hhg(a, -0.5), 0.8) - ref));
  return {spread <= 1e-10, fmt::format("purity {:.12f} at eta=0.8, spread over alpha {{5, 10.5, 20}}: {:.2e}", ref, spread)};
}

Outcome never_maximally_mixed() {
  double lowest = 1.0;
  double at = 0.0;
  for (int i = 1; i <= 501; ++i) {
    const double eta = i / 502.0;
    const double g = lossy_purity(kHhg, eta);
    if (g < lowest) {
      lowest = g;
      at = eta;
    }
  }
  return {lowest > 0.5, fmt::format("min hhg purity over 501 interior points: {:.12f} at eta={:.4f}", lowest, at)};
}

Outcome oracle_equivalence() {
  OracleSuiteOptions opts;
  opts.cases = 60;
  const auto report = run_oracle_suite(opts);
  std::string detail = fmt::format("{} cases, amplitudes <= {}:", report.cases, opts.max_amplitude);
  for (const auto& w : report.worst) detail += fmt::format(" {} {:.1e}", w.quantity, w.error);
  detail += fmt::format(" (tolerance {:.0e})", report.tolerance);
  return {report.passed() && report.cases >= 50, detail};
}

Outcome rank_one_consistency() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<> u(0.0, 1.0);
  auto amp = [&](double r_min, double r_max) {
    return std::polar(r_min + (r_max - r_min) * u(rng), 2.0 * kPi * u(rng));
  };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    TwoModeSuperposition psi;
    if (i % 2 == 0) {
      const CatParams p = i % 4 == 0 ? CatParams::hhg(amp(0.0, 12.0), amp(0.1, 1.0))
                                     : CatParams::odd(amp(0.5, 12.0));
      psi = TwoModeSuperposition::product(make_state(p), amp(0.0, 12.0));
    } else {
      std::vector<TwoModeTerm> terms;
      for (int k = 0; k < 3; ++k) terms.push_back({amp(0.2, 1.0), amp(0.0, 4.0), amp(0.0, 4.0)});
      const TwoModeSuperposition raw(terms);
      psi = cplx{1.0 / std::sqrt(raw.norm_squared())} * raw;
    }
    const double mixed = qfi_mixed(QfiInput{{{1.0, psi}}});
    const double pure = qfi_pure(psi);
    worst = std::max(worst, std::abs(mixed - pure) / std::abs(pure));
  }
  return {worst <= 1e-9, fmt::format("100 random pure inputs, max relative difference {:.2e} (limit 1e-9)", worst)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"fidelity-crossover", 5.0, fidelity_crossover},
      {"small-loss-purity", 1.0, small_loss_purity},
      {"small-loss-fidelity", 1.0, small_loss_fidelity},
      {"qfi-robustness-ratios", 5.0, qfi_robustness},
      {"pure-qfi-gain", 5.0, pure_qfi_gain},
      {"chi-insensitivity", 10.0, chi_insensitivity},
      {"hhg-purity-alpha-independence", 0.0, hhg_alpha_independence},
      {"never-maximally-mixed", 0.0, never_maximally_mixed},
      {"oracle-equivalence", 120.0, oracle_equivalence},
      {"rank-one-qfi-consistency", 0.0, rank_one_consistency},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string only;
  bool list = false;
  app.add_option("--only", only, "run a single criterion");
  app.add_flag("--list", list, "print criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : criteria()) fmt::print("{}\n", c.name);
    return 0;
  }

  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && c.name != only) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, fmt::format("error: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      out.pass = false;
      out.detail += fmt::format("; runtime over {} s limit", c.time_limit);
    }
    fmt::print("{} {}: {} [{:.2f} s]\n", out.pass ? "PASS" : "FAIL", c.name, out.detail, secs);
    if (!out.pass) ++failures;
  }
  if (ran == 0) {
    fmt::print(stderr, "unknown criterion '{}'\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

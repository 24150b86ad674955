// catqfi: sweep driver and oracle check for lossy cat-state metrics.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "catqfi/config.hpp"
#include "catqfi/errors.hpp"
#include "catqfi/sweep.hpp"
#include "catqfi/validation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct FlagValues {
  std::string alpha, hhg_alpha, delta_alpha, parity, mean_photon;
  std::string eta_grid, chi_grid, photon_grid, lo_mag, out;
  bool no_lo_loss = false;
  std::string config;
};

struct FlagBinding {
  const char* name;
  const char* key;
  std::string FlagValues::*field;
  const char* help;
};

const FlagBinding kFlags[] = {
    {"--alpha", "alpha", &FlagValues::alpha, "even/odd cat amplitude (default 10)"},
    {"--hhg-alpha", "hhg_alpha", &FlagValues::hhg_alpha,
     "HHG reference amplitude (default alpha - delta_alpha)"},
    {"--delta-alpha", "delta_alpha", &FlagValues::delta_alpha, "HHG displacement (default -0.5)"},
    {"--parity", "parity", &FlagValues::parity, "restrict the comparator to even or odd"},
    {"--mean-photon", "mean_photon", &FlagValues::mean_photon,
     "match every family to this mean photon number"},
    {"--eta-grid", "eta_grid", &FlagValues::eta_grid, "transmissivity grid a:b:n"},
    {"--chi-grid", "chi_grid", &FlagValues::chi_grid, "LO phase grid a:b:n"},
    {"--photon-grid", "photon_grid", &FlagValues::photon_grid, "mean photon grid a:b:n"},
    {"--lo-mag", "lo_mag", &FlagValues::lo_mag, "LO amplitude |beta| (default 10)"},
    {"--out", "out", &FlagValues::out, "CSV output path (default stdout)"},
};

void add_sweep_options(CLI::App* sub, FlagValues& flags) {
  for (const auto& f : kFlags) sub->add_option(f.name, flags.*(f.field), f.help);
  sub->add_flag("--no-lo-loss", flags.no_lo_loss, "keep the LO amplitude fixed under loss");
  sub->add_option("--config", flags.config, "flat key = value config file")->check(CLI::ExistingFile);
}

std::vector<catqfi::ConfigEntry> collect_flags(const CLI::App* sub, const FlagValues& flags) {
  std::vector<catqfi::ConfigEntry> out;
  for (const auto& f : kFlags) {
    if (sub->count(f.name) > 0) out.push_back({f.key, flags.*(f.field), f.name});
  }
  if (flags.no_lo_loss) out.push_back({"lo_loss", "false", "--no-lo-loss"});
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json describe(const catqfi::SweepSpec& spec, unsigned threads) {
  nlohmann::json j;
  j["experiment"] = std::string(catqfi::to_string(spec.experiment));
  j["alpha"] = spec.alpha;
  j["hhg_alpha"] = spec.effective_hhg_alpha();
  j["delta_alpha"] = spec.delta_alpha;
  if (spec.parity) j["parity"] = std::string(catqfi::to_string(*spec.parity));
  if (spec.mean_photon) j["mean_photon"] = *spec.mean_photon;
  j["eta_grid"] = spec.eta_grid.to_string();
  j["chi_grid"] = spec.chi_grid.to_string();
  j["photon_grid"] = spec.photon_grid.to_string();
  j["lo_mag"] = spec.lo_mag;
  j["lo_loss"] = spec.lo_loss;
  j["threads"] = threads;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw catqfi::IoError(fmt::format("cannot open '{}' for writing", path.string()));
  f << text;
  f.flush();
  if (!f) throw catqfi::IoError(fmt::format("write to '{}' failed", path.string()));
}

int run_experiment(catqfi::Experiment e, const CLI::App* sub, const FlagValues& flags,
                   const std::vector<std::string>& argv) {
  const auto entries = collect_flags(sub, flags);
  std::optional<std::filesystem::path> file;
  if (!flags.config.empty()) file = flags.config;
  const catqfi::SweepSpec spec = catqfi::parse_config(e, file, entries);

  const unsigned threads = catqfi::thread_cap_from_env();
  const auto started = std::chrono::steady_clock::now();
  const auto rows = catqfi::run_sweep(spec, threads);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::ostringstream csv;
  catqfi::write_csv(csv, rows);
  if (spec.out_path.empty()) {
    std::cout << csv.str();
    std::cout.flush();
    if (!std::cout) throw catqfi::IoError("write to stdout failed");
    return 0;
  }

  write_file(spec.out_path, csv.str());
  nlohmann::json meta;
  meta["created"] = utc_timestamp();
  meta["command"] = argv;
  meta["rows"] = rows.size();
  meta["seconds"] = seconds;
  meta["spec"] = describe(spec, threads);
  write_file(spec.out_path + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

int run_validate(int cases, std::uint64_t seed) {
  catqfi::OracleSuiteOptions opts;
  opts.cases = cases;
  opts.seed = seed;
  const auto report = catqfi::run_oracle_suite(opts);
  fmt::print("oracle agreement: {} cases, amplitudes <= {}, tolerance {:.0e}\n", report.cases,
             opts.max_amplitude, report.tolerance);
  for (const auto& w : report.worst) {
    fmt::print("  {:<9} max error {:.3e}  ({})\n", w.quantity, w.error, w.label);
  }
  for (const auto& f : report.failures) {
    fmt::print("  FAIL {} {}: engine {:.12g} oracle {:.12g}\n", f.quantity, f.label, f.engine,
               f.oracle);
  }
  fmt::print("{}\n", report.passed() ? "PASS" : "FAIL");
  return report.passed() ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Purity, fidelity and QFI of lossy cat states"};
  app.require_subcommand(1);

  FlagValues flags;
  std::vector<std::pair<CLI::App*, catqfi::Experiment>> experiments;
  for (auto e : {catqfi::Experiment::purity, catqfi::Experiment::fidelity,
                 catqfi::Experiment::qfi_ratio, catqfi::Experiment::qfi_map,
                 catqfi::Experiment::chi_derivative, catqfi::Experiment::pure_qfi,
                 catqfi::Experiment::loss_sensitivity}) {
    const std::string name(catqfi::to_string(e));
    auto* sub = app.add_subcommand(name, fmt::format("{} sweep as CSV", name));
    add_sweep_options(sub, flags);
    experiments.emplace_back(sub, e);
  }

  int cases = 60;
  std::uint64_t seed = catqfi::OracleSuiteOptions{}.seed;
  auto* validate = app.add_subcommand("validate", "compare the engine with the Fock-space oracle");
  validate->add_option("--cases", cases, "number of random cases")->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const std::vector<std::string> args(argv, argv + argc);
  try {
    if (validate->parsed()) return run_validate(cases, seed);
    for (const auto& [sub, e] : experiments) {
      if (sub->parsed()) return run_experiment(e, sub, flags, args);
    }
  } catch (const catqfi::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const catqfi::IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return kExitIo;
  } catch (const catqfi::NumericError& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitNumeric;
  }
  return kExitConfig;
}

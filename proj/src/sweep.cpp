#include "catqfi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "catqfi/errors.hpp"
#include "catqfi/metrics.hpp"
#include "catqfi/qfi_engine.hpp"

namespace catqfi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  }
  return v;
}

struct Task {
  std::string label;
  std::function<SweepRow()> eval;
};

std::vector<StateFamily> even_odd_families(const SweepSpec& s) {
  if (s.parity) return {*s.parity == Parity::even ? StateFamily::even : StateFamily::odd};
  return {StateFamily::even, StateFamily::odd};
}

StateFamily comparator(const SweepSpec& s) {
  return s.parity.value_or(Parity::odd) == Parity::even ? StateFamily::even : StateFamily::odd;
}

CatParams params_for(const SweepSpec& s, StateFamily f) {
  if (s.mean_photon) {
    const double a = match_amplitude_for_photon_number(*s.mean_photon, f, s.delta_alpha);
    return {f, {a, 0.0}, {s.delta_alpha, 0.0}};
  }
  if (f == StateFamily::hhg) return CatParams::hhg(s.effective_hhg_alpha(), s.delta_alpha);
  return {f, {s.alpha, 0.0}, {}};
}

std::optional<double> delta_of(const CatParams& p) {
  if (p.family != StateFamily::hhg) return std::nullopt;
  return p.delta_alpha.real();
}

SweepRow base_row(const SweepSpec& s, std::string state, const CatParams& p) {
  SweepRow r;
  r.experiment = std::string(to_string(s.experiment));
  r.state = std::move(state);
  r.alpha = p.alpha.real();
  r.delta_alpha = delta_of(p);
  return r;
}

std::vector<Task> build_tasks(const SweepSpec& s) {
  std::vector<Task> tasks;
  const auto etas = s.eta_grid.points();
  const auto chis = s.chi_grid.points();
  const auto photons = s.photon_grid.points();
  const LoSettings lo{s.lo_mag, s.lo_loss};
  const std::string exp_name(to_string(s.experiment));

  auto label = [&](std::string_view state, std::string_view rest) {
    return fmt::format("experiment={} state={} {}", exp_name, state, rest);
  };

  std::vector<StateFamily> families{StateFamily::hhg};
  switch (s.experiment) {
    case Experiment::purity:
    case Experiment::fidelity:
    case Experiment::loss_sensitivity:
    case Experiment::pure_qfi:
      for (auto f : even_odd_families(s)) families.push_back(f);
      break;
    case Experiment::qfi_ratio:
    case Experiment::chi_derivative:
      families.push_back(comparator(s));
      break;
    case Experiment::qfi_map:
      families.clear();
      break;
  }

  switch (s.experiment) {
    case Experiment::purity:
    case Experiment::fidelity: {
      const bool is_purity = s.experiment == Experiment::purity;
      for (auto f : families) {
        const CatParams p = params_for(s, f);
        const std::string state(to_string(f));
        for (double eta : etas) {
          tasks.push_back({label(state, fmt::format("eta={}", eta)), [=, &s] {
                             SweepRow r = base_row(s, state, p);
                             r.eta = eta;
                             r.value = is_purity ? lossy_purity(p, eta) : lossy_fidelity(p, eta);
                             return r;
                           }});
        }
      }
      break;
    }
    case Experiment::qfi_ratio:
    case Experiment::chi_derivative: {
      const bool is_ratio = s.experiment == Experiment::qfi_ratio;
      for (auto f : families) {
        const CatParams p = params_for(s, f);
        const std::string state(to_string(f));
        for (double eta : etas) {
          for (double chi : chis) {
            tasks.push_back({label(state, fmt::format("eta={} chi={}", eta, chi)), [=, &s] {
                               SweepRow r = base_row(s, state, p);
                               r.eta = eta;
                               r.chi = chi;
                               r.lo_mag = lo.magnitude;
                               r.value = is_ratio ? qfi_ratio(p, eta, chi, lo)
                                                  : chi_derivative(p, eta, chi, lo);
                               return r;
                             }});
          }
        }
      }
      break;
    }
    case Experiment::qfi_map: {
      const CatParams hhg = params_for(s, StateFamily::hhg);
      const CatParams cmp = params_for(s, comparator(s));
      const std::string state = fmt::format("hhg-{}", to_string(cmp.family));
      for (double eta : etas) {
        for (double chi : chis) {
          tasks.push_back({label(state, fmt::format("eta={} chi={}", eta, chi)), [=, &s] {
                             SweepRow r = base_row(s, state, cmp);
                             r.delta_alpha = hhg.delta_alpha.real();
                             r.eta = eta;
                             r.chi = chi;
                             r.lo_mag = lo.magnitude;
                             r.value = delta_qfi(eta, chi, hhg, cmp, lo);
                             return r;
                           }});
        }
      }
      break;
    }
    case Experiment::pure_qfi: {
      for (auto f : families) {
        const std::string state(to_string(f));
        for (double n : photons) {
          for (double chi : chis) {
            tasks.push_back({label(state, fmt::format("mean_photon={} chi={}", n, chi)), [=, &s] {
                               const double a_odd =
                                   match_amplitude_for_photon_number(n, StateFamily::odd);
                               const double a =
                                   match_amplitude_for_photon_number(n, f, s.delta_alpha);
                               const CatParams p{f, {a, 0.0}, {s.delta_alpha, 0.0}};
                               SweepRow r = base_row(s, state, p);
                               r.eta = 1.0;
                               r.chi = chi;
                               r.lo_mag = a_odd;
                               const double qfi = pure_qfi(p, chi, a_odd);
                               r.value = qfi / pure_qfi(CatParams::odd(a_odd), chi, a_odd);
                               r.value2 = qfi;
                               return r;
                             }});
          }
        }
      }
      break;
    }
    case Experiment::loss_sensitivity: {
      for (auto f : families) {
        const std::string state(to_string(f));
        for (double n : photons) {
          tasks.push_back({label(state, fmt::format("mean_photon={}", n)), [=, &s] {
                             const double a =
                                 match_amplitude_for_photon_number(n, f, s.delta_alpha);
                             const CatParams p{f, {a, 0.0}, {s.delta_alpha, 0.0}};
                             const SensitivityReport rep = loss_sensitivity(p);
                             SweepRow r = base_row(s, state, p);
                             r.eta = 1.0;
                             r.value = rep.d_purity_d_eta;
                             r.value2 = rep.d_fidelity_d_eta;
                             return r;
                           }});
        }
      }
      break;
    }
  }
  return tasks;
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::purity: return "purity";
    case Experiment::fidelity: return "fidelity";
    case Experiment::qfi_ratio: return "qfi-ratio";
    case Experiment::qfi_map: return "qfi-map";
    case Experiment::chi_derivative: return "chi-derivative";
    case Experiment::pure_qfi: return "pure-qfi";
    case Experiment::loss_sensitivity: return "loss-sensitivity";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : {Experiment::purity, Experiment::fidelity, Experiment::qfi_ratio,
                 Experiment::qfi_map, Experiment::chi_derivative, Experiment::pure_qfi,
                 Experiment::loss_sensitivity}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

Grid Grid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    return single(parse_number(text, "grid value"));
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw ConfigError(fmt::format("grid '{}' is not of the form a:b:n", text));
  }
  Grid g;
  g.min = parse_number(text.substr(0, c1), "grid lower bound");
  g.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid upper bound");
  const auto count_text = text.substr(c2 + 1);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
  if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
    throw ConfigError(fmt::format("invalid grid point count '{}'", count_text));
  }
  g.count = n;
  return g;
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(min);
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? max : min + (max - min) * i / (count - 1));
  }
  return out;
}

std::string Grid::to_string() const {
  return fmt::format("{}:{}:{}", format_double(min), format_double(max), count);
}

SweepSpec SweepSpec::defaults(Experiment e) {
  SweepSpec s;
  s.experiment = e;
  switch (e) {
    case Experiment::purity:
    case Experiment::fidelity:
      s.eta_grid = {0.0, 1.0, 501};
      break;
    case Experiment::qfi_ratio:
      s.eta_grid = {0.0, 1.0, 101};
      s.chi_grid = Grid::single(std::numbers::pi / 2);
      break;
    case Experiment::qfi_map:
      s.eta_grid = {0.0, 1.0, 101};
      s.chi_grid = {0.0, kTwoPi, 121};
      break;
    case Experiment::chi_derivative:
      s.eta_grid = {0.9, 0.99, 2};
      s.chi_grid = {0.0, kTwoPi, 361};
      break;
    case Experiment::pure_qfi:
      s.eta_grid = Grid::single(1.0);
      s.chi_grid = Grid::single(0.0);
      break;
    case Experiment::loss_sensitivity:
      s.eta_grid = Grid::single(1.0);
      break;
  }
  return s;
}

void SweepSpec::validate() const {
  auto check_grid = [](const Grid& g, std::string_view key, double lo, double hi) {
    if (g.count < 1) throw ConfigError(fmt::format("{}: needs at least one point", key));
    if (g.count > 1 && !(g.max > g.min)) {
      throw ConfigError(fmt::format("{}: upper bound must exceed the lower bound", key));
    }
    if (g.min < lo || g.max > hi) {
      throw ConfigError(fmt::format("{}: bounds {} outside [{}, {}]", key, g.to_string(),
                                    format_double(lo), format_double(hi)));
    }
  };
  check_grid(eta_grid, "eta_grid", 0.0, 1.0);
  // 2 pi is accepted as the periodic endpoint of a closed chi grid.
  check_grid(chi_grid, "chi_grid", 0.0, kTwoPi + 1e-12);
  check_grid(photon_grid, "photon_grid", 1e-300, 1e300);
  if (!(alpha > 0.0)) throw ConfigError("alpha: must be positive");
  if (delta_alpha == 0.0) throw ConfigError("delta_alpha: must be non-zero");
  if (!(lo_mag >= 0.0)) throw ConfigError("lo_mag: must be non-negative");
  if (mean_photon && !(*mean_photon > 0.0)) throw ConfigError("mean_photon: must be positive");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::vector<Task> tasks = build_tasks(spec);
  std::vector<std::optional<SweepRow>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i].eval();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw NumericError(fmt::format("grid point {} ({}): {}", i, tasks[i].label, e.what()));
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(results.size());
  for (auto& r : results) rows.push_back(std::move(*r));
  return rows;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string format_row(const SweepRow& row) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  return fmt::format("{},{},{},{},{},{},{},{},{}", row.experiment, row.state,
                     format_double(row.alpha), opt(row.delta_alpha), opt(row.eta), opt(row.chi),
                     opt(row.lo_mag), format_double(row.value), opt(row.value2));
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

unsigned thread_cap_from_env() {
  const char* env = std::getenv("CATQFI_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size() || n == 0) {
    throw ConfigError(fmt::format("CATQFI_THREADS must be a positive integer, got '{}'", text));
  }
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, hw);
}

}  // namespace catqfi

#include "catqfi/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "catqfi/cat_states.hpp"
#include "catqfi/fock_oracle.hpp"
#include "catqfi/loss_channel.hpp"
#include "catqfi/metrics.hpp"
#include "catqfi/qfi_engine.hpp"

namespace catqfi {

namespace {

constexpr std::array<double, 3> kFixedEtas{0.5, 0.9, 1.0};

std::string show(cplx z) { return fmt::format("{:.6g}{:+.6g}i", z.real(), z.imag()); }

class CaseGenerator {
 public:
  CaseGenerator(std::uint64_t seed, double max_amp) : rng_(seed), max_amp_(max_amp) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }

  // Uniform in the annulus r_min <= |z| <= r_max.
  cplx amplitude(double r_min, double r_max) {
    const double r = std::sqrt(uniform(r_min * r_min, r_max * r_max));
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
  }

  cplx amplitude(double r_min) { return amplitude(r_min, max_amp_); }

  double max_amp() const { return max_amp_; }

 private:
  std::mt19937_64 rng_;
  double max_amp_;
};

struct OracleCase {
  std::string label;
  CoherentSuperposition state;
  CoherentSuperposition reference;  // fidelity target
  CoherentMixture lossy;            // engine result
  double eta = 1.0;
  cplx beta;
};

CoherentSuperposition random_superposition(CaseGenerator& gen) {
  std::vector<cplx> amps;
  while (amps.size() < 3) {
    const cplx a = gen.amplitude(0.0);
    // Keep the Gram matrix comfortably invertible.
    const bool far = std::all_of(amps.begin(), amps.end(),
                                 [&](cplx b) { return std::abs(a - b) > 0.4; });
    if (far) amps.push_back(a);
  }
  std::vector<CoherentTerm> terms;
  for (cplx a : amps) terms.push_back({gen.amplitude(0.2, 1.0), a});
  return CoherentSuperposition(std::move(terms)).normalized();
}

OracleCase make_case(int i, CaseGenerator& gen) {
  OracleCase c;
  c.eta = i % 3 == 0 ? kFixedEtas[(i / 3) % kFixedEtas.size()] : gen.uniform(0.05, 1.0);
  c.beta = gen.amplitude(0.0);

  auto from_params = [&](const CatParams& p, std::string label) {
    c.label = std::move(label);
    c.state = make_state(p);
    c.reference = make_state(p.scaled(std::sqrt(c.eta)));
    c.lossy = lossy_state(p, c.eta);
  };

  switch (i % 5) {
    case 0: {
      const cplx a = gen.amplitude(0.0);
      from_params(CatParams::coherent(a), fmt::format("coherent a={}", show(a)));
      break;
    }
    case 1: {
      const cplx a = gen.amplitude(0.3);
      from_params(CatParams::even(a), fmt::format("even a={}", show(a)));
      break;
    }
    case 2: {
      const cplx a = gen.amplitude(0.3);
      from_params(CatParams::odd(a), fmt::format("odd a={}", show(a)));
      break;
    }
    case 3: {
      cplx a;
      cplx d;
      do {
        a = gen.amplitude(0.0);
        d = gen.amplitude(0.1, 1.5);
      } while (std::abs(a + d) > gen.max_amp());
      from_params(CatParams::hhg(a, d), fmt::format("hhg a={} d={}", show(a), show(d)));
      break;
    }
    default: {
      c.label = "random 3-term";
      c.state = random_superposition(gen);
      c.reference = c.state;
      c.lossy = spectral_decompose(apply_loss(c.state, c.eta));
      break;
    }
  }
  c.label += fmt::format(" eta={:.6g} beta={}", c.eta, show(c.beta));
  return c;
}

double max_abs_amp(const CoherentSuperposition& s) {
  double m = 0.0;
  for (const auto& t : s.terms()) m = std::max(m, std::abs(t.amp));
  return m;
}

}  // namespace

double OracleReport::max_error() const {
  double m = 0.0;
  for (const auto& w : worst) m = std::max(m, w.error);
  return m;
}

OracleReport run_oracle_suite(const OracleSuiteOptions& opts) {
  OracleReport report;
  report.tolerance = opts.tolerance;
  CaseGenerator gen(opts.seed, opts.max_amplitude);

  auto record = [&](std::string quantity, const std::string& label, double engine, double oracle) {
    const double err = std::abs(engine - oracle) / std::max(std::abs(oracle), 1.0);
    OracleComparison cmp{std::move(quantity), label, engine, oracle, err};
    if (err > opts.tolerance) report.failures.push_back(cmp);
    auto it = std::find_if(report.worst.begin(), report.worst.end(),
                           [&](const auto& w) { return w.quantity == cmp.quantity; });
    if (it == report.worst.end()) {
      report.worst.push_back(cmp);
    } else if (err > it->error) {
      *it = cmp;
    }
  };

  for (int i = 0; i < opts.cases; ++i) {
    const OracleCase c = make_case(i, gen);
    const int nmax = fock::default_nmax(max_abs_amp(c.state));
    const fock::Matrix rho = fock::loss_kraus(fock::density(fock::to_fock(c.state, nmax)), c.eta);

    record("purity", c.label, purity(c.lossy), fock::purity(rho));
    record("fidelity", c.label, fidelity_pure_mixed(c.reference, c.lossy),
           fock::fidelity(fock::to_fock(c.reference, nmax), rho));

    const std::vector<double> spec = fock::spectrum(rho, 1e-10);
    const std::size_t n = std::max(spec.size(), c.lossy.rank());
    for (std::size_t k = 0; k < n; ++k) {
      const double w_engine = k < c.lossy.rank() ? c.lossy.components[k].weight : 0.0;
      const double w_oracle = k < spec.size() ? spec[k] : 0.0;
      record("weight", fmt::format("{} k={}", c.label, k), w_engine, w_oracle);
    }

    const auto lo = CoherentSuperposition::coherent(c.beta);
    const double f_engine = qfi_mixed(attach_lo(c.lossy, c.beta));
    const double f_oracle =
        fock::qfi_fock_product(rho, fock::to_fock(lo, fock::default_nmax(std::abs(c.beta))));
    record("qfi", c.label, f_engine, f_oracle);
    ++report.cases;
  }
  return report;
}

}  // namespace catqfi

#include "catqfi/cat_states.hpp"

#include <cmath>
#include <string>

#include "catqfi/errors.hpp"

namespace catqfi {

std::string_view to_string(StateFamily f) {
  switch (f) {
    case StateFamily::coherent: return "coherent";
    case StateFamily::even: return "even";
    case StateFamily::odd: return "odd";
    case StateFamily::hhg: return "hhg";
  }
  return "?";
}

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

double hhg_norm(cplx delta_alpha) { return -std::expm1(-std::norm(delta_alpha)); }

CoherentSuperposition hhg_cat(cplx alpha, cplx delta_alpha) {
  const LogComplex xi = overlap(alpha, alpha + delta_alpha);
  if (xi.magnitude() >= 1.0 - 1e-12) {
    throw DegenerateCat("HHG cat with |xi| -> 1 (delta_alpha = " +
                        std::to_string(std::abs(delta_alpha)) + ")");
  }
  const double inv = 1.0 / std::sqrt(hhg_norm(delta_alpha));
  return CoherentSuperposition{{cplx{inv, 0.0}, alpha + delta_alpha},
                               {-xi.value() * inv, alpha}};
}

double even_odd_norm(cplx alpha, Parity parity) {
  // <alpha|-alpha> = exp(-2|alpha|^2), real.
  const double x = 2.0 * std::norm(alpha);
  return parity == Parity::even ? 2.0 * (1.0 + std::exp(-x)) : -2.0 * std::expm1(-x);
}

CoherentSuperposition even_odd_cat(cplx alpha, Parity parity) {
  const double n = even_odd_norm(alpha, parity);
  if (n < 1e-300) {
    throw DegenerateCat("odd cat normalization vanishes at |alpha| = " +
                        std::to_string(std::abs(alpha)));
  }
  const double inv = 1.0 / std::sqrt(n);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  return CoherentSuperposition{{cplx{inv, 0.0}, alpha}, {cplx{sign * inv, 0.0}, -alpha}};
}

CoherentSuperposition make_state(const CatParams& p) {
  switch (p.family) {
    case StateFamily::coherent: return CoherentSuperposition::coherent(p.alpha);
    case StateFamily::even: return even_odd_cat(p.alpha, Parity::even);
    case StateFamily::odd: return even_odd_cat(p.alpha, Parity::odd);
    case StateFamily::hhg: return hhg_cat(p.alpha, p.delta_alpha);
  }
  throw DomainError("unknown state family");
}

double mean_photon(const CoherentSuperposition& s) {
  cplx sum{};
  for (const auto& a : s.terms()) {
    for (const auto& b : s.terms()) {
      sum += std::conj(a.coeff) * b.coeff * mode_moment(a.amp, b.amp, 1, 1);
    }
  }
  return std::real(sum);
}

double match_amplitude_for_photon_number(double target_n, StateFamily family,
                                         double delta_alpha) {
  if (!(target_n > 0.0) || !std::isfinite(target_n)) {
    throw DomainError("target photon number must be positive, got " + std::to_string(target_n));
  }
  if (family == StateFamily::coherent) return std::sqrt(target_n);

  auto photons = [&](double a) {
    return mean_photon(make_state(CatParams{family, {a, 0.0}, {delta_alpha, 0.0}}));
  };

  // Below this the cat components nearly coincide and the moments lose all precision.
  constexpr double kMinAmplitude = 1e-4;
  const double root = std::sqrt(target_n);
  double lo = std::max(root - 2.0, 1e-3);
  double hi = root + 2.0;
  while (lo > kMinAmplitude && photons(lo) > target_n) lo = std::max(0.5 * lo, kMinAmplitude);
  if (photons(lo) > target_n) {
    throw NoBracket("mean photon number " + std::to_string(target_n) + " is below the " +
                    std::string(to_string(family)) + " family minimum");
  }
  for (int k = 0; k < 60 && photons(hi) < target_n; ++k) hi *= 2.0;
  if (photons(hi) < target_n) {
    throw NoBracket("could not bracket mean photon number " + std::to_string(target_n));
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (photons(mid) < target_n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace catqfi

#pragma once

#include <string_view>

#include "catqfi/coherent_algebra.hpp"

namespace catqfi {

enum class Parity { even, odd };

enum class StateFamily { coherent, even, odd, hhg };

std::string_view to_string(StateFamily f);
std::string_view to_string(Parity p);
Parity opposite(Parity p);

/// Parameters of one pure input state.
///
/// For the HHG family the components sit at `alpha + delta_alpha` and
/// `alpha`. `delta_alpha` is ignored by the other families.
struct CatParams {
  StateFamily family = StateFamily::odd;
  cplx alpha{10.0, 0.0};
  cplx delta_alpha{-0.5, 0.0};

  static CatParams coherent(cplx alpha) { return {StateFamily::coherent, alpha, {}}; }
  static CatParams even(cplx alpha) { return {StateFamily::even, alpha, {}}; }
  static CatParams odd(cplx alpha) { return {StateFamily::odd, alpha, {}}; }
  static CatParams hhg(cplx alpha, cplx delta_alpha) {
    return {StateFamily::hhg, alpha, delta_alpha};
  }

  /// Same family with every amplitude multiplied by `factor`.
  CatParams scaled(double factor) const {
    return {family, alpha * factor, delta_alpha * factor};
  }
};

/// (|alpha + delta_alpha> - xi |alpha>) / sqrt(1 - |xi|^2), xi = <alpha|alpha + delta_alpha>.
/// Throws DegenerateCat when |xi| >= 1 - 1e-12.
CoherentSuperposition hhg_cat(cplx alpha, cplx delta_alpha);

/// (|alpha> +- |-alpha>) / sqrt(N+-), N+- = 2(1 +- exp(-2|alpha|^2)).
/// Throws DegenerateCat when the odd normalization drops below 1e-300.
CoherentSuperposition even_odd_cat(cplx alpha, Parity parity);

/// N+- for even/odd cats, evaluated without cancellation.
double even_odd_norm(cplx alpha, Parity parity);

/// 1 - |<alpha|alpha + delta_alpha>|^2.
double hhg_norm(cplx delta_alpha);

CoherentSuperposition make_state(const CatParams& p);

/// <psi|a^dag a|psi> for a normalized superposition.
double mean_photon(const CoherentSuperposition& s);

/// Real amplitude `alpha` for which mean_photon(make_state(...)) == target_n.
///
/// For the HHG family `delta_alpha` is held fixed and the returned value is
/// the `alpha` of CatParams::hhg. Throws NoBracket below the family's
/// smallest attainable photon number (1 for the odd cat).
double match_amplitude_for_photon_number(double target_n, StateFamily family,
                                         double delta_alpha = -0.5);

}  // namespace catqfi

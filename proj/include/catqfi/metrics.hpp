#pragma once

#include <span>
#include <vector>

#include "catqfi/cat_states.hpp"
#include "catqfi/coherent_algebra.hpp"
#include "catqfi/loss_channel.hpp"

namespace catqfi {

/// Tr rho^2 = sum_k w_k^2 for a mixture of orthonormal components.
double purity(const CoherentMixture& m);

/// Tr rho^2 = Tr(M S M S), no decomposition needed.
double purity_operator(const CoherentOperator& op);

/// <psi|rho|psi>.
double fidelity_pure_mixed(const CoherentSuperposition& psi, const CoherentMixture& m);
double fidelity_pure_operator(const CoherentSuperposition& psi, const CoherentOperator& op);

/// Purity of the lossy state of `p` at transmissivity eta.
double lossy_purity(const CatParams& p, double eta);

/// Fidelity of the lossy state with the pure state whose amplitudes are
/// reduced by sqrt(eta), the reference that maximizes the overlap.
double lossy_fidelity(const CatParams& p, double eta);

// One-sided step for the eta = 1 derivatives (eta > 1 is unphysical).
inline constexpr double kSensitivityStep = 1e-6;

struct SensitivityReport {
  double d_purity_d_eta = 0.0;
  double d_fidelity_d_eta = 0.0;
  double step = kSensitivityStep;
};

/// (f(1) - f(1 - h)) / h for purity and fidelity.
SensitivityReport loss_sensitivity(const CatParams& p, double step = kSensitivityStep);

/// Same, for each target mean photon number; amplitudes are matched per point.
std::vector<SensitivityReport> loss_sensitivity(StateFamily family, double delta_alpha,
                                                std::span<const double> mean_photons,
                                                double step = kSensitivityStep);

}  // namespace catqfi

#include "catqfi/metrics.hpp"

#include <cmath>

namespace catqfi {

double purity(const CoherentMixture& m) {
  double sum = 0.0;
  for (const auto& c : m.components) sum += c.weight * c.weight;
  return sum;
}

double purity_operator(const CoherentOperator& op) {
  const Eigen::MatrixXcd ms = op.mat * gram_matrix(op.amps);
  return std::real((ms * ms).trace());
}

double fidelity_pure_mixed(const CoherentSuperposition& psi, const CoherentMixture& m) {
  double sum = 0.0;
  for (const auto& c : m.components) sum += c.weight * std::norm(inner(psi, c.state));
  return sum;
}

double fidelity_pure_operator(const CoherentSuperposition& psi, const CoherentOperator& op) {
  // <psi|a_i> for each basis amplitude.
  const Eigen::VectorXcd bra =
      cross_overlaps(psi.amplitudes(), op.amps).transpose() * psi.coefficients().conjugate();
  return std::real((bra.transpose() * op.mat * bra.conjugate()).value());
}

double lossy_purity(const CatParams& p, double eta) { return purity(lossy_state(p, eta)); }

double lossy_fidelity(const CatParams& p, double eta) {
  const CoherentMixture noisy = lossy_state(p, eta);
  if (eta == 0.0 && (p.family == StateFamily::odd || p.family == StateFamily::hhg)) {
    // The reduced odd and HHG cats degenerate at eta = 0; both tend to |1>,
    // which has zero overlap with the vacuum the lossy state collapses to.
    return 0.0;
  }
  return fidelity_pure_mixed(make_state(p.scaled(std::sqrt(eta))), noisy);
}

SensitivityReport loss_sensitivity(const CatParams& p, double step) {
  SensitivityReport r;
  r.step = step;
  r.d_purity_d_eta = (lossy_purity(p, 1.0) - lossy_purity(p, 1.0 - step)) / step;
  r.d_fidelity_d_eta = (lossy_fidelity(p, 1.0) - lossy_fidelity(p, 1.0 - step)) / step;
  return r;
}

std::vector<SensitivityReport> loss_sensitivity(StateFamily family, double delta_alpha,
                                                std::span<const double> mean_photons,
                                                double step) {
  std::vector<SensitivityReport> out;
  out.reserve(mean_photons.size());
  for (const double n : mean_photons) {
    const double a = match_amplitude_for_photon_number(n, family, delta_alpha);
    out.push_back(loss_sensitivity(CatParams{family, {a, 0.0}, {delta_alpha, 0.0}}, step));
  }
  return out;
}

}  // namespace catqfi

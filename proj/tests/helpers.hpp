#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "catqfi/coherent_algebra.hpp"
#include "catqfi/fock_oracle.hpp"
#include "catqfi/loss_channel.hpp"
#include "catqfi/metrics.hpp"

namespace testing {

using catqfi::cplx;

inline cplx random_amp(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<> u(0.0, 1.0);
  return std::polar(r_max * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// ||A - B||_HS^2 for two coherent-basis operators.
inline double hs_distance_sq(const catqfi::CoherentOperator& a, const catqfi::CoherentOperator& b) {
  catqfi::CoherentOperator d;
  d.amps = a.amps;
  d.amps.insert(d.amps.end(), b.amps.begin(), b.amps.end());
  const auto na = static_cast<Eigen::Index>(a.amps.size());
  const auto nb = static_cast<Eigen::Index>(b.amps.size());
  d.mat = Eigen::MatrixXcd::Zero(na + nb, na + nb);
  d.mat.topLeftCorner(na, na) = a.mat;
  d.mat.bottomRightCorner(nb, nb) = -b.mat;
  // Merging first subtracts coefficients on shared amplitudes before any sums.
  return catqfi::purity_operator(d.merged());
}

// Fock-space density matrix of a coherent-basis operator.
inline catqfi::fock::Matrix to_fock(const catqfi::CoherentOperator& op, int nmax) {
  catqfi::fock::Matrix v(nmax + 1, static_cast<Eigen::Index>(op.amps.size()));
  for (std::size_t i = 0; i < op.amps.size(); ++i) {
    v.col(static_cast<Eigen::Index>(i)) =
        catqfi::fock::to_fock(catqfi::CoherentSuperposition::coherent(op.amps[i]), nmax).entries;
  }
  return v * op.mat * v.adjoint();
}

}  // namespace testing

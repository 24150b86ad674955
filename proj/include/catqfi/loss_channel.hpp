#pragma once

// Pure-loss channel on coherent superpositions and the spectral form of the
// resulting low-rank mixtures.
//
// A beam splitter of transmissivity eta maps |a>|0> to |a sqrt(eta)>|a sqrt(1-eta)>.
// Tracing out the reflected mode turns c_i c_j* |a_i><a_j| into
// c_i c_j* <a_j sqrt(1-eta)|a_i sqrt(1-eta)> |a_i sqrt(eta)><a_j sqrt(eta)|,
// so every lossy state stays in the span of the scaled amplitudes.

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "catqfi/cat_states.hpp"
#include "catqfi/coherent_algebra.hpp"

namespace catqfi {

// Eigenvalues below this are dropped from spectral decompositions.
inline constexpr double kRankThreshold = 1e-13;

/// rho = sum_ij mat(i, j) |amps[i]><amps[j]|.
struct CoherentOperator {
  std::vector<cplx> amps;
  Eigen::MatrixXcd mat;

  static CoherentOperator pure(const CoherentSuperposition& s);

  /// Tr rho = sum_ij M_ij <a_j|a_i>.
  double trace() const;
  /// Combine basis amplitudes closer than kMergeTolerance.
  CoherentOperator merged() const;
};

struct MixtureComponent {
  double weight = 0.0;
  CoherentSuperposition state;
};

/// rho = sum_k w_k |v_k><v_k| with orthonormal |v_k>, sorted by descending weight.
struct CoherentMixture {
  std::vector<MixtureComponent> components;

  std::size_t rank() const { return components.size(); }
  double total_weight() const;
  CoherentOperator to_operator() const;
};

/// Throws DomainError unless 0 <= eta <= 1.
void check_eta(double eta);

CoherentOperator apply_loss(const CoherentSuperposition& s, double eta);
CoherentOperator apply_loss(const CoherentOperator& op, double eta);

/// Eigen-decomposition of a density operator in the (non-orthogonal) coherent basis.
///
/// The Gram matrix S = V D V^dag defines an orthonormal frame V D^{-1/2};
/// in that frame rho is D^{1/2} V^dag M V D^{1/2}. When all basis overlaps
/// underflow, S is exactly the identity and M is diagonalized directly.
/// Throws IllConditionedGram when min eig(S) < 1e-14 max eig(S).
CoherentMixture spectral_decompose(const CoherentOperator& op);

/// Mixing parameter of a lossy even/odd cat: weight of the opposite-parity component.
double zeta(cplx alpha, Parity parity, double eta);

/// (1 - zeta)|psi_p(alpha sqrt eta)><..| + zeta |psi_{-p}(alpha sqrt eta)><..|.
CoherentMixture lossy_even_odd(cplx alpha, Parity parity, double eta);

/// Closed-form two-component decomposition of a lossy HHG cat.
CoherentMixture lossy_hhg(cplx alpha, cplx delta_alpha, double eta);

/// Dispatches to the closed forms above; a coherent state stays pure.
CoherentMixture lossy_state(const CatParams& p, double eta);

/// Sets the coefficient of the largest-|amplitude| term real and positive.
CoherentSuperposition canonical_phase(const CoherentSuperposition& s);

}  // namespace catqfi

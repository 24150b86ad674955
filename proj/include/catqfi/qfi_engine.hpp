#pragma once

// Quantum Fisher information of a signal state mixed with a coherent local
// oscillator (LO) on a beam splitter with generator
//
//   H = -i (a0^dag a1 - a0 a1^dag).
//
// For rho_in = sum_i l_i |l_i><l_i| the QFI is
//
//   F = sum_i 4 l_i <l_i|H^2|l_i> - sum_ij 8 l_i l_j / (l_i + l_j) |<l_i|H|l_j>|^2,
//
// which does not depend on the beam-splitter angle, so the unitary itself is
// never formed. All matrix elements between two-mode coherent products are
// closed-form.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "catqfi/cat_states.hpp"
#include "catqfi/coherent_algebra.hpp"
#include "catqfi/loss_channel.hpp"

namespace catqfi {

inline constexpr double kSupportThreshold = 1e-12;
inline constexpr double kChiStep = 1e-4;

struct TwoModeTerm {
  cplx coeff;
  cplx amp0;  // signal mode
  cplx amp1;  // LO mode
};

/// sum_k c_k |amp0_k>|amp1_k>; duplicate amplitude pairs are merged.
class TwoModeSuperposition {
 public:
  TwoModeSuperposition() = default;
  explicit TwoModeSuperposition(std::vector<TwoModeTerm> terms);
  TwoModeSuperposition(std::initializer_list<TwoModeTerm> terms);

  /// |s> (x) |lo>.
  static TwoModeSuperposition product(const CoherentSuperposition& s, cplx lo);

  std::span<const TwoModeTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  double norm_squared() const;
  friend TwoModeSuperposition operator*(cplx c, const TwoModeSuperposition& s);

 private:
  std::vector<TwoModeTerm> terms_;
};

cplx inner(const TwoModeSuperposition& s1, const TwoModeSuperposition& s2);

struct QfiComponent {
  double weight = 0.0;
  TwoModeSuperposition state;
};

struct QfiInput {
  std::vector<QfiComponent> mixture;
  double support_threshold = kSupportThreshold;
};

/// Each component |l_i> becomes |l_i>|beta>; weights unchanged.
QfiInput attach_lo(const CoherentMixture& m, cplx beta);

/// <g0, g1|H|d0, d1>.
cplx h_element(cplx g0, cplx g1, cplx d0, cplx d1);
/// <g0, g1|H^2|d0, d1>.
cplx h2_element(cplx g0, cplx g1, cplx d0, cplx d1);

/// Sesquilinear extensions over superposition terms.
cplx h_matrix_element(const TwoModeSuperposition& bra, const TwoModeSuperposition& ket);
cplx h2_matrix_element(const TwoModeSuperposition& bra, const TwoModeSuperposition& ket);

/// Mixed-state QFI over components above the support threshold.
/// Throws EmptySupport when none qualify.
double qfi_mixed(const QfiInput& input);

/// 4 (<H^2> - <H>^2) for a normalized pure input.
double qfi_pure(const TwoModeSuperposition& psi);

struct LoSettings {
  double magnitude = 10.0;
  // Reduce the LO amplitude by sqrt(eta) in the lossy scenario.
  bool lossy = true;
};

/// F(eta) / F(1) for the given signal family and LO phase chi.
double qfi_ratio(const CatParams& p, double eta, double chi, LoSettings lo = {});

/// F_hhg(eta)/F_hhg - F_odd(eta)/F_odd; positive where the HHG cat is more robust.
double delta_qfi(double eta, double chi, const CatParams& hhg, const CatParams& odd,
                 LoSettings lo = {});

/// Central difference d/dchi of qfi_ratio.
double chi_derivative(const CatParams& p, double eta, double chi, LoSettings lo = {},
                      double step = kChiStep);

/// QFI of the pure state p with an LO of amplitude lo_mag e^{i chi}.
double pure_qfi(const CatParams& p, double chi, double lo_mag);

}  // namespace catqfi

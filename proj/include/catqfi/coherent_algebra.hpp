#pragma once

// Exact algebra for finite superpositions of coherent states.
//
// Coherent-state overlaps <a|b> = exp(-|a-b|^2/2 + i Im(a* b)) are kept in
// log form until the point of use, so that amplitudes with |a|^2 in the
// thousands never overflow or lose precision. Materialization below
// exp(-700) gives exactly zero, and every caller must stay finite then.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace catqfi {

using cplx = std::complex<double>;

// Values of log|z| below this materialize to exactly 0.
inline constexpr double kUnderflowLogMag = -700.0;

// Amplitudes closer than this are treated as the same coherent state.
inline constexpr double kMergeTolerance = 1e-12;

/// z = exp(log_mag) * exp(i phase). log_mag = -inf encodes an exact zero.
struct LogComplex {
  double log_mag = 0.0;
  double phase = 0.0;

  static LogComplex zero();
  static LogComplex from(cplx z);

  bool is_zero() const;
  /// Ordinary complex value; exactly 0 once log_mag < kUnderflowLogMag.
  cplx value() const;
  double magnitude() const;

  friend LogComplex operator*(LogComplex a, LogComplex b) {
    return {a.log_mag + b.log_mag, a.phase + b.phase};
  }
  friend LogComplex conj(LogComplex a) { return {a.log_mag, -a.phase}; }
};

/// <a|b> for coherent states |a>, |b>.
LogComplex overlap(cplx a, cplx b);

struct CoherentTerm {
  cplx coeff;
  cplx amp;
};

/// A pure single-mode state sum_i c_i |a_i> with pairwise distinct amplitudes.
///
/// Construction merges amplitudes within kMergeTolerance by summing their
/// coefficients. Term order is the order of first appearance.
class CoherentSuperposition {
 public:
  CoherentSuperposition() = default;
  explicit CoherentSuperposition(std::vector<CoherentTerm> terms);
  CoherentSuperposition(std::initializer_list<CoherentTerm> terms);

  static CoherentSuperposition coherent(cplx amp);

  std::span<const CoherentTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  std::vector<cplx> amplitudes() const;
  Eigen::VectorXcd coefficients() const;

  double norm_squared() const;
  /// Copy rescaled to unit norm. Throws DomainError for the null vector.
  CoherentSuperposition normalized() const;

  /// Every amplitude multiplied by `factor` (coefficients unchanged).
  CoherentSuperposition scaled_amplitudes(double factor) const;

  friend CoherentSuperposition operator*(cplx c, const CoherentSuperposition& s);

 private:
  std::vector<CoherentTerm> terms_;
};

/// <s1|s2> = sum_ij conj(c1_i) c2_j <a1_i|a2_j>.
cplx inner(const CoherentSuperposition& s1, const CoherentSuperposition& s2);

/// <g|(a^dag)^m a^n|d> = conj(g)^m d^n <g|d>. Only m, n <= 2 are needed here
/// but any non-negative powers work.
cplx mode_moment(cplx g, cplx d, int m, int n);

/// S_ij = <a_i|a_j>.
Eigen::MatrixXcd gram_matrix(std::span<const cplx> amps);

/// M_ij = <a_i|b_j> for two amplitude lists.
Eigen::MatrixXcd cross_overlaps(std::span<const cplx> a, std::span<const cplx> b);

/// True when every off-diagonal overlap of `amps` underflows to zero.
bool mutually_distinguishable(std::span<const cplx> amps);

}  // namespace catqfi

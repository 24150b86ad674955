#pragma once

// Truncated Fock-space reference implementation. It shares nothing with the
// coherent-state engine beyond the input state description, and exists to
// validate that engine at small amplitudes (|alpha| <~ 3).

#include <vector>

#include <Eigen/Core>

#include "catqfi/coherent_algebra.hpp"

namespace catqfi::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct FockVector {
  int nmax = 0;
  Vector entries;  // amplitudes of |0> ... |nmax>
};

/// ceil(|a|^2 + 10|a| + 20).
int default_nmax(double max_abs_amp);
int default_nmax(const CoherentSuperposition& s);

/// Expands each |a> as e^{-|a|^2/2} a^n / sqrt(n!). Throws TruncationError
/// when the probability beyond nmax is >= 1e-12.
FockVector to_fock(const CoherentSuperposition& s, int nmax);

Matrix density(const FockVector& v);

/// K_k = sum_n sqrt(C(n,k) eta^{n-k} (1-eta)^k) |n-k><n|, k = 0..nmax.
std::vector<Matrix> loss_kraus_operators(int nmax, double eta);

/// sum_k K_k rho K_k^dag.
Matrix loss_kraus(const Matrix& rho, double eta);

/// The same channel built literally: rho (x) |0><0| through a beam splitter of
/// angle arccos(sqrt(eta)), then the second mode traced out. The unitary is
/// exponentiated block by block in total photon number, where truncation is exact.
Matrix loss_beam_splitter(const Matrix& rho, double eta);

/// Mode grid for two-mode objects; index = n0 (nmax1 + 1) + n1.
struct TwoModeGrid {
  int nmax0 = 0;
  int nmax1 = 0;
  int dim() const { return (nmax0 + 1) * (nmax1 + 1); }
  int index(int n0, int n1) const { return n0 * (nmax1 + 1) + n1; }
};

/// Dense -i (a0^dag a1 - a0 a1^dag) on the truncated grid.
Matrix bs_generator(const TwoModeGrid& grid);

/// |v0> (x) |v1>.
Vector tensor(const FockVector& v0, const FockVector& v1);

/// Mixed-state QFI from a full eigendecomposition of a two-mode rho (small grids).
double qfi_fock(const Matrix& rho, const TwoModeGrid& grid);

/// QFI of rho0 (x) |lo><lo|: rho0 is diagonalized in full and H is applied
/// without truncation loss, so large single-mode cutoffs stay cheap.
double qfi_fock_product(const Matrix& rho0, const FockVector& lo);

double purity(const Matrix& rho);
double fidelity(const FockVector& psi, const Matrix& rho);
double mean_photon(const FockVector& psi);

/// Eigenvalues of rho above `threshold`, descending.
std::vector<double> spectrum(const Matrix& rho, double threshold = 1e-12);

}  // namespace catqfi::fock

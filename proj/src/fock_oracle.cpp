#include "catqfi/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "catqfi/errors.hpp"

namespace catqfi::fock {

namespace {

constexpr double kTailLimit = 1e-12;
constexpr double kEigenTailLimit = 1e-10;
constexpr double kRetainThreshold = 1e-12;
constexpr int kBoundaryLevels = 3;

// Coherent expansion of s up to `top`, inclusive.
Vector expand(const CoherentSuperposition& s, int top) {
  Vector out = Vector::Zero(top + 1);
  for (const auto& t : s.terms()) {
    cplx c = t.coeff * std::exp(-0.5 * std::norm(t.amp));
    out(0) += c;
    for (int n = 1; n <= top; ++n) {
      c *= t.amp / std::sqrt(static_cast<double>(n));
      out(n) += c;
    }
  }
  return out;
}

double boundary_mass(const Vector& v, const TwoModeGrid& g) {
  double mass = 0.0;
  for (int n0 = 0; n0 <= g.nmax0; ++n0) {
    for (int n1 = 0; n1 <= g.nmax1; ++n1) {
      if (n0 > g.nmax0 - kBoundaryLevels || n1 > g.nmax1 - kBoundaryLevels) {
        mass += std::norm(v(g.index(n0, n1)));
      }
    }
  }
  return mass;
}

double boundary_mass(const Vector& v) {
  double mass = 0.0;
  for (Eigen::Index n = std::max<Eigen::Index>(0, v.size() - kBoundaryLevels); n < v.size(); ++n) {
    mass += std::norm(v(n));
  }
  return mass;
}

// H v on the grid enlarged by one level per mode, so nothing leaks out.
Vector apply_generator_padded(const Vector& v, const TwoModeGrid& g) {
  const TwoModeGrid big{g.nmax0 + 1, g.nmax1 + 1};
  Vector out = Vector::Zero(big.dim());
  const cplx i{0.0, 1.0};
  for (int n0 = 0; n0 <= g.nmax0; ++n0) {
    for (int n1 = 0; n1 <= g.nmax1; ++n1) {
      const cplx x = v(g.index(n0, n1));
      if (x == cplx{}) continue;
      // a0^dag a1 |n0, n1> = sqrt((n0+1) n1) |n0+1, n1-1>
      if (n1 > 0) out(big.index(n0 + 1, n1 - 1)) += -i * std::sqrt((n0 + 1.0) * n1) * x;
      // a0 a1^dag |n0, n1> = sqrt(n0 (n1+1)) |n0-1, n1+1>
      if (n0 > 0) out(big.index(n0 - 1, n1 + 1)) += i * std::sqrt(n0 * (n1 + 1.0)) * x;
    }
  }
  return out;
}

Vector pad(const Vector& v, const TwoModeGrid& g) {
  const TwoModeGrid big{g.nmax0 + 1, g.nmax1 + 1};
  Vector out = Vector::Zero(big.dim());
  for (int n0 = 0; n0 <= g.nmax0; ++n0) {
    for (int n1 = 0; n1 <= g.nmax1; ++n1) out(big.index(n0, n1)) = v(g.index(n0, n1));
  }
  return out;
}

struct Eigenpair {
  double weight;
  Vector vec;
};

double qfi_from_pairs(const std::vector<Eigenpair>& pairs, const std::vector<Vector>& h_vecs,
                      const std::vector<Vector>& kets) {
  double first = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    first += 4.0 * pairs[i].weight * h_vecs[i].squaredNorm();
  }
  double second = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const double li = pairs[i].weight;
      const double lj = pairs[j].weight;
      second += 8.0 * li * lj / (li + lj) * std::norm(kets[i].dot(h_vecs[j]));
    }
  }
  return first - second;
}

}  // namespace

int default_nmax(double max_abs_amp) {
  return static_cast<int>(std::ceil(max_abs_amp * max_abs_amp + 10.0 * max_abs_amp + 20.0));
}

int default_nmax(const CoherentSuperposition& s) {
  double m = 0.0;
  for (const auto& t : s.terms()) m = std::max(m, std::abs(t.amp));
  return default_nmax(m);
}

FockVector to_fock(const CoherentSuperposition& s, int nmax) {
  if (nmax < 0) throw DomainError("nmax must be non-negative");
  double max_amp = 0.0;
  for (const auto& t : s.terms()) max_amp = std::max(max_amp, std::abs(t.amp));
  const int top = nmax + static_cast<int>(std::ceil(max_amp * max_amp + 20.0 * max_amp)) + 60;
  const Vector full = expand(s, top);
  const double tail = full.tail(top - nmax).squaredNorm();
  if (tail >= kTailLimit) {
    throw TruncationError("Fock tail mass " + std::to_string(tail) + " beyond nmax = " +
                          std::to_string(nmax));
  }
  return {nmax, full.head(nmax + 1)};
}

Matrix density(const FockVector& v) { return v.entries * v.entries.adjoint(); }

std::vector<Matrix> loss_kraus_operators(int nmax, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(nmax) + 1);
  for (int k = 0; k <= nmax; ++k) {
    Matrix kk = Matrix::Zero(nmax + 1, nmax + 1);
    for (int n = k; n <= nmax; ++n) {
      const int kept = n - k;
      if ((kept > 0 && eta == 0.0) || (k > 0 && eta == 1.0)) continue;
      double log_amp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(kept + 1.0);
      if (kept > 0) log_amp += kept * std::log(eta);
      if (k > 0) log_amp += k * std::log1p(-eta);
      kk(kept, n) = std::exp(0.5 * log_amp);
    }
    ops.push_back(std::move(kk));
  }
  return ops;
}

Matrix loss_kraus(const Matrix& rho, double eta) {
  const int nmax = static_cast<int>(rho.rows()) - 1;
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : loss_kraus_operators(nmax, eta)) out += k * rho * k.adjoint();
  return out;
}

Matrix loss_beam_splitter(const Matrix& rho, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  const int nmax = static_cast<int>(rho.rows()) - 1;
  const double theta = std::acos(std::sqrt(eta));
  const cplx i{0.0, 1.0};

  // column[n](k): amplitude of |n-k, k> in U |n, 0>.
  std::vector<Vector> column(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    // Block basis |n-k, k>, k = 0..n.
    Matrix g = Matrix::Zero(n + 1, n + 1);
    for (int k = 0; k < n; ++k) {
      // a0 a1^dag |n-k, k> = sqrt((n-k)(k+1)) |n-k-1, k+1>, entering H with +i.
      const double amp = std::sqrt(static_cast<double>(n - k) * (k + 1));
      g(k + 1, k) = i * amp;
      g(k, k + 1) = -i * amp;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<cplx>() * (-i * theta)).array().exp().matrix();
    const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    column[static_cast<std::size_t>(n)] = u.col(0);
  }

  Matrix out = Matrix::Zero(nmax + 1, nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    for (int m = 0; m <= nmax; ++m) {
      const cplx r = rho(n, m);
      if (r == cplx{}) continue;
      const auto& un = column[static_cast<std::size_t>(n)];
      const auto& um = column[static_cast<std::size_t>(m)];
      for (int k = 0; k <= std::min(n, m); ++k) {
        out(n - k, m - k) += r * un(k) * std::conj(um(k));
      }
    }
  }
  return out;
}

Matrix bs_generator(const TwoModeGrid& grid) {
  Matrix h = Matrix::Zero(grid.dim(), grid.dim());
  const cplx i{0.0, 1.0};
  for (int n0 = 0; n0 <= grid.nmax0; ++n0) {
    for (int n1 = 0; n1 <= grid.nmax1; ++n1) {
      const int col = grid.index(n0, n1);
      if (n1 > 0 && n0 < grid.nmax0) {
        h(grid.index(n0 + 1, n1 - 1), col) += -i * std::sqrt((n0 + 1.0) * n1);
      }
      if (n0 > 0 && n1 < grid.nmax1) {
        h(grid.index(n0 - 1, n1 + 1), col) += i * std::sqrt(n0 * (n1 + 1.0));
      }
    }
  }
  return h;
}

Vector tensor(const FockVector& v0, const FockVector& v1) {
  const TwoModeGrid g{v0.nmax, v1.nmax};
  Vector out(g.dim());
  for (int n0 = 0; n0 <= g.nmax0; ++n0) {
    for (int n1 = 0; n1 <= g.nmax1; ++n1) out(g.index(n0, n1)) = v0.entries(n0) * v1.entries(n1);
  }
  return out;
}

double qfi_fock(const Matrix& rho, const TwoModeGrid& grid) {
  if (rho.rows() != grid.dim()) throw DomainError("rho does not match the two-mode grid");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  const Matrix h = bs_generator(grid);
  std::vector<Eigenpair> pairs;
  std::vector<Vector> hv;
  std::vector<Vector> kets;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double w = es.eigenvalues()(k);
    if (w <= kRetainThreshold) continue;
    const Vector v = es.eigenvectors().col(k);
    if (boundary_mass(v, grid) >= kEigenTailLimit) {
      throw TruncationError("retained eigenvector reaches the Fock cutoff");
    }
    pairs.push_back({w, v});
    hv.push_back(h * v);
    kets.push_back(v);
  }
  if (pairs.empty()) throw EmptySupport("density matrix has no support above threshold");
  return qfi_from_pairs(pairs, hv, kets);
}

double qfi_fock_product(const Matrix& rho0, const FockVector& lo) {
  const int nmax0 = static_cast<int>(rho0.rows()) - 1;
  const TwoModeGrid grid{nmax0, lo.nmax};
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho0 + rho0.adjoint()));
  std::vector<Eigenpair> pairs;
  std::vector<Vector> hv;
  std::vector<Vector> kets;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double w = es.eigenvalues()(k);
    if (w <= kRetainThreshold) continue;
    const Vector v0 = es.eigenvectors().col(k);
    if (boundary_mass(v0) >= kEigenTailLimit) {
      throw TruncationError("retained eigenvector reaches the Fock cutoff");
    }
    const Vector v = tensor(FockVector{nmax0, v0}, lo);
    pairs.push_back({w, v});
    hv.push_back(apply_generator_padded(v, grid));
    kets.push_back(pad(v, grid));
  }
  if (pairs.empty()) throw EmptySupport("density matrix has no support above threshold");
  return qfi_from_pairs(pairs, hv, kets);
}

double purity(const Matrix& rho) { return std::real((rho * rho).trace()); }

double fidelity(const FockVector& psi, const Matrix& rho) {
  return std::real(psi.entries.dot(rho * psi.entries));
}

double mean_photon(const FockVector& psi) {
  double sum = 0.0;
  for (Eigen::Index n = 0; n < psi.entries.size(); ++n) {
    sum += static_cast<double>(n) * std::norm(psi.entries(n));
  }
  return sum;
}

std::vector<double> spectrum(const Matrix& rho, double threshold) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    if (es.eigenvalues()(k) > threshold) out.push_back(es.eigenvalues()(k));
  }
  return out;
}

}  // namespace catqfi::fock

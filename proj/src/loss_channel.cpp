#include "catqfi/loss_channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "catqfi/errors.hpp"

namespace catqfi {

namespace {

// Index of `a` in `amps` (within kMergeTolerance), appending it if absent.
Eigen::Index basis_index(std::vector<cplx>& amps, cplx a) {
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (std::abs(amps[k] - a) < kMergeTolerance) return static_cast<Eigen::Index>(k);
  }
  amps.push_back(a);
  return static_cast<Eigen::Index>(amps.size() - 1);
}

CoherentSuperposition make_superposition(const std::vector<cplx>& amps,
                                         const Eigen::VectorXcd& coeffs) {
  std::vector<CoherentTerm> terms;
  terms.reserve(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    terms.push_back({coeffs(static_cast<Eigen::Index>(i)), amps[i]});
  }
  return CoherentSuperposition(std::move(terms));
}

void sort_components(std::vector<MixtureComponent>& comps) {
  std::stable_sort(comps.begin(), comps.end(),
                   [](const MixtureComponent& a, const MixtureComponent& b) {
                     return a.weight > b.weight;
                   });
}

double squared_norm_in(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& v) {
  return std::real(v.dot(gram * v));
}

}  // namespace

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("transmissivity eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

CoherentOperator CoherentOperator::pure(const CoherentSuperposition& s) {
  const Eigen::VectorXcd c = s.coefficients();
  return {s.amplitudes(), c * c.adjoint()};
}

double CoherentOperator::trace() const {
  return std::real((mat * gram_matrix(amps)).trace());
}

CoherentOperator CoherentOperator::merged() const {
  std::vector<cplx> out_amps;
  std::vector<Eigen::Index> map;
  map.reserve(amps.size());
  for (const cplx a : amps) map.push_back(basis_index(out_amps, a));
  if (out_amps.size() == amps.size()) return *this;

  const auto n = static_cast<Eigen::Index>(out_amps.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) += mat(i, j);
    }
  }
  return {std::move(out_amps), std::move(m)};
}

double CoherentMixture::total_weight() const {
  double sum = 0.0;
  for (const auto& c : components) sum += c.weight;
  return sum;
}

CoherentOperator CoherentMixture::to_operator() const {
  std::vector<cplx> amps;
  for (const auto& comp : components) {
    for (const auto& t : comp.state.terms()) basis_index(amps, t.amp);
  }
  const auto n = static_cast<Eigen::Index>(amps.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& comp : components) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    for (const auto& t : comp.state.terms()) c(basis_index(amps, t.amp)) += t.coeff;
    m += comp.weight * c * c.adjoint();
  }
  return {std::move(amps), std::move(m)};
}

CoherentOperator apply_loss(const CoherentSuperposition& s, double eta) {
  return apply_loss(CoherentOperator::pure(s), eta);
}

CoherentOperator apply_loss(const CoherentOperator& op, double eta) {
  check_eta(eta);
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  CoherentOperator out{op.amps, op.mat};
  for (Eigen::Index i = 0; i < out.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.mat.cols(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      out.mat(i, j) *= overlap(op.amps[uj] * r, op.amps[ui] * r).value();
    }
  }
  for (auto& a : out.amps) a *= t;
  return out.merged();
}

CoherentSuperposition canonical_phase(const CoherentSuperposition& s) {
  if (s.empty()) return s;
  const auto terms = s.terms();
  std::size_t pick = 0;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (std::abs(terms[k].amp) > std::abs(terms[pick].amp) + kMergeTolerance) pick = k;
  }
  if (std::abs(terms[pick].coeff) < 1e-300) {
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (std::abs(terms[k].coeff) > std::abs(terms[pick].coeff)) pick = k;
    }
  }
  const cplx c = terms[pick].coeff;
  return (std::conj(c) / std::abs(c)) * s;
}

CoherentMixture spectral_decompose(const CoherentOperator& input) {
  const CoherentOperator op = input.merged();
  const auto n = static_cast<Eigen::Index>(op.amps.size());
  if (n == 0) throw DomainError("spectral_decompose of an empty operator");

  const Eigen::MatrixXcd herm = 0.5 * (op.mat + op.mat.adjoint());
  Eigen::VectorXd weights;
  Eigen::MatrixXcd coeffs;

  if (n == 1 || mutually_distinguishable(op.amps)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    weights = es.eigenvalues();
    coeffs = es.eigenvectors();
  } else {
    const Eigen::MatrixXcd gram = gram_matrix(op.amps);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram);
    const Eigen::VectorXd d = gs.eigenvalues();
    if (d.minCoeff() < 1e-14 * d.maxCoeff()) {
      throw IllConditionedGram("Gram matrix condition exceeds 1e14 (min eigenvalue " +
                               std::to_string(d.minCoeff()) + ")");
    }
    const Eigen::VectorXd sqrt_d = d.cwiseSqrt();
    const Eigen::MatrixXcd& v = gs.eigenvectors();
    const Eigen::MatrixXcd frame = sqrt_d.asDiagonal() * v.adjoint();
    Eigen::MatrixXcd rho_e = frame * herm * frame.adjoint();
    rho_e = 0.5 * (rho_e + rho_e.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_e);
    weights = es.eigenvalues();
    coeffs = v * sqrt_d.cwiseInverse().asDiagonal() * es.eigenvectors();
  }

  CoherentMixture out;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (weights(k) < kRankThreshold) continue;
    out.components.push_back(
        {weights(k), canonical_phase(make_superposition(op.amps, coeffs.col(k)))});
  }
  sort_components(out.components);
  return out;
}

double zeta(cplx alpha, Parity parity, double eta) {
  check_eta(eta);
  const double decoherence = -std::expm1(-2.0 * std::norm(alpha) * (1.0 - eta));
  if (decoherence == 0.0) return 0.0;
  return even_odd_norm(alpha * std::sqrt(eta), opposite(parity)) /
         (2.0 * even_odd_norm(alpha, parity)) * decoherence;
}

CoherentMixture lossy_even_odd(cplx alpha, Parity parity, double eta) {
  const double z = zeta(alpha, parity, eta);
  const cplx reduced = alpha * std::sqrt(eta);
  CoherentMixture out;
  if (1.0 - z >= kRankThreshold) {
    out.components.push_back({1.0 - z, canonical_phase(even_odd_cat(reduced, parity))});
  }
  if (z >= kRankThreshold) {
    out.components.push_back({z, canonical_phase(even_odd_cat(reduced, opposite(parity)))});
  }
  sort_components(out.components);
  return out;
}

CoherentMixture lossy_hhg(cplx alpha, cplx delta_alpha, double eta) {
  check_eta(eta);
  const LogComplex xi_log = overlap(alpha, alpha + delta_alpha);
  if (xi_log.magnitude() >= 1.0 - 1e-12) {
    throw DegenerateCat("HHG cat with |xi| -> 1 (delta_alpha = " +
                        std::to_string(std::abs(delta_alpha)) + ")");
  }
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  const cplx shifted = (alpha + delta_alpha) * t;
  const cplx base = alpha * t;

  CoherentMixture out;
  if (std::abs(shifted - base) < kMergeTolerance) {
    out.components.push_back({1.0, CoherentSuperposition::coherent(base)});
    return out;
  }

  const cplx xi = xi_log.value();
  const double norm0 = hhg_norm(delta_alpha);
  const cplx xi_eta = overlap(base, shifted).value();
  const double norm_eta = hhg_norm(delta_alpha * t);
  const cplx mu = overlap((alpha + delta_alpha) * r, alpha * r).value();

  const double x = std::norm(xi_eta) - std::norm(xi) - std::norm(xi_eta - xi * mu);
  const double det = norm_eta * x / (norm0 * norm0);
  const double disc = std::max(norm0 * norm0 - 4.0 * norm_eta * x, 0.0);
  const double lam_plus = (norm0 + std::sqrt(disc)) / (2.0 * norm0);
  const double lam_minus = det / lam_plus;

  const std::vector<cplx> amps{shifted, base};
  const Eigen::MatrixXcd gram = gram_matrix(amps);
  const cplx numerator = (std::conj(xi_eta) - std::conj(xi) * std::conj(mu)) * std::sqrt(norm_eta);

  auto eigvec = [&](double lam) {
    const cplx c1 = numerator / (norm0 * lam - norm_eta);
    const cplx c2 = std::sqrt(norm_eta) - xi_eta * c1;
    Eigen::VectorXcd v(2);
    v << c1, c2;
    return v;
  };
  // Of the two eigenvectors, take the one with the better-conditioned
  // denominator from the closed form; the other is its orthogonal complement.
  const bool plus_direct =
      std::abs(norm0 * lam_plus - norm_eta) >= std::abs(norm0 * lam_minus - norm_eta);
  Eigen::VectorXcd direct = eigvec(plus_direct ? lam_plus : lam_minus);
  direct /= std::sqrt(squared_norm_in(gram, direct));
  const Eigen::VectorXcd u = gram * direct;
  Eigen::VectorXcd complement(2);
  complement << std::conj(u(1)), -std::conj(u(0));
  complement /= std::sqrt(squared_norm_in(gram, complement));

  const Eigen::VectorXcd& v_plus = plus_direct ? direct : complement;
  const Eigen::VectorXcd& v_minus = plus_direct ? complement : direct;
  if (lam_plus >= kRankThreshold) {
    out.components.push_back({lam_plus, canonical_phase(make_superposition(amps, v_plus))});
  }
  if (lam_minus >= kRankThreshold) {
    out.components.push_back({lam_minus, canonical_phase(make_superposition(amps, v_minus))});
  }
  sort_components(out.components);
  return out;
}

CoherentMixture lossy_state(const CatParams& p, double eta) {
  switch (p.family) {
    case StateFamily::coherent: {
      check_eta(eta);
      CoherentMixture out;
      out.components.push_back(
          {1.0, CoherentSuperposition::coherent(p.alpha * std::sqrt(eta))});
      return out;
    }
    case StateFamily::even: return lossy_even_odd(p.alpha, Parity::even, eta);
    case StateFamily::odd: return lossy_even_odd(p.alpha, Parity::odd, eta);
    case StateFamily::hhg: return lossy_hhg(p.alpha, p.delta_alpha, eta);
  }
  throw DomainError("unknown state family");
}

}  // namespace catqfi

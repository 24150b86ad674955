#include "catqfi/coherent_algebra.hpp"

#include <cmath>
#include <limits>

#include "catqfi/errors.hpp"

namespace catqfi {

LogComplex LogComplex::zero() {
  return {-std::numeric_limits<double>::infinity(), 0.0};
}

LogComplex LogComplex::from(cplx z) {
  if (z == cplx{}) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

bool LogComplex::is_zero() const { return log_mag < kUnderflowLogMag; }

cplx LogComplex::value() const {
  if (is_zero()) return {};
  return std::polar(std::exp(log_mag), phase);
}

double LogComplex::magnitude() const {
  return is_zero() ? 0.0 : std::exp(log_mag);
}

LogComplex overlap(cplx a, cplx b) {
  // -|a|^2/2 - |b|^2/2 + Re(a* b) == -|a - b|^2/2, without the cancellation.
  return {-0.5 * std::norm(a - b), std::imag(std::conj(a) * b)};
}

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms) {
  terms_.reserve(terms.size());
  for (const auto& t : terms) {
    bool merged = false;
    for (auto& existing : terms_) {
      if (std::abs(existing.amp - t.amp) < kMergeTolerance) {
        existing.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
  std::erase_if(terms_, [](const CoherentTerm& t) { return t.coeff == cplx{}; });
}

CoherentSuperposition::CoherentSuperposition(std::initializer_list<CoherentTerm> terms)
    : CoherentSuperposition(std::vector<CoherentTerm>(terms)) {}

CoherentSuperposition CoherentSuperposition::coherent(cplx amp) {
  return CoherentSuperposition{{cplx{1.0, 0.0}, amp}};
}

std::vector<cplx> CoherentSuperposition::amplitudes() const {
  std::vector<cplx> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.amp);
  return out;
}

Eigen::VectorXcd CoherentSuperposition::coefficients() const {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(terms_.size()));
  for (std::size_t i = 0; i < terms_.size(); ++i) c(static_cast<Eigen::Index>(i)) = terms_[i].coeff;
  return c;
}

double CoherentSuperposition::norm_squared() const { return std::real(inner(*this, *this)); }

CoherentSuperposition CoherentSuperposition::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw DomainError("cannot normalize a superposition with norm^2 = " + std::to_string(n2));
  }
  return cplx{1.0 / std::sqrt(n2), 0.0} * *this;
}

CoherentSuperposition CoherentSuperposition::scaled_amplitudes(double factor) const {
  std::vector<CoherentTerm> t(terms_.begin(), terms_.end());
  for (auto& term : t) term.amp *= factor;
  return CoherentSuperposition(std::move(t));
}

CoherentSuperposition operator*(cplx c, const CoherentSuperposition& s) {
  CoherentSuperposition out;
  out.terms_.reserve(s.terms_.size());
  for (const auto& t : s.terms_) out.terms_.push_back({c * t.coeff, t.amp});
  std::erase_if(out.terms_, [](const CoherentTerm& t) { return t.coeff == cplx{}; });
  return out;
}

cplx inner(const CoherentSuperposition& s1, const CoherentSuperposition& s2) {
  cplx sum{};
  for (const auto& a : s1.terms()) {
    for (const auto& b : s2.terms()) {
      sum += std::conj(a.coeff) * b.coeff * overlap(a.amp, b.amp).value();
    }
  }
  return sum;
}

cplx mode_moment(cplx g, cplx d, int m, int n) {
  const cplx ov = overlap(g, d).value();
  if (ov == cplx{}) return {};
  cplx pre{1.0, 0.0};
  const cplx gc = std::conj(g);
  for (int k = 0; k < m; ++k) pre *= gc;
  for (int k = 0; k < n; ++k) pre *= d;
  return pre * ov;
}

Eigen::MatrixXcd gram_matrix(std::span<const cplx> amps) { return cross_overlaps(amps, amps); }

Eigen::MatrixXcd cross_overlaps(std::span<const cplx> a, std::span<const cplx> b) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = overlap(a[i], b[j]).value();
    }
  }
  return m;
}

bool mutually_distinguishable(std::span<const cplx> amps) {
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t j = i + 1; j < amps.size(); ++j) {
      if (!overlap(amps[i], amps[j]).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace catqfi

#include "catqfi/qfi_engine.hpp"

#include <cmath>
#include <complex>

#include "catqfi/errors.hpp"

namespace catqfi {

namespace {

constexpr double kPairSumFloor = 1e-14;

// <g0|d0><g1|d1> materialized once, in log domain until the product.
cplx product_overlap(cplx g0, cplx g1, cplx d0, cplx d1) {
  return (overlap(g0, d0) * overlap(g1, d1)).value();
}

template <typename Element>
cplx sesquilinear(const TwoModeSuperposition& bra, const TwoModeSuperposition& ket,
                  Element element) {
  cplx sum{};
  for (const auto& a : bra.terms()) {
    for (const auto& b : ket.terms()) {
      sum += std::conj(a.coeff) * b.coeff * element(a.amp0, a.amp1, b.amp0, b.amp1);
    }
  }
  return sum;
}

}  // namespace

TwoModeSuperposition::TwoModeSuperposition(std::vector<TwoModeTerm> terms) {
  terms_.reserve(terms.size());
  for (const auto& t : terms) {
    bool merged = false;
    for (auto& e : terms_) {
      if (std::abs(e.amp0 - t.amp0) < kMergeTolerance && std::abs(e.amp1 - t.amp1) < kMergeTolerance) {
        e.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
}

TwoModeSuperposition::TwoModeSuperposition(std::initializer_list<TwoModeTerm> terms)
    : TwoModeSuperposition(std::vector<TwoModeTerm>(terms)) {}

TwoModeSuperposition TwoModeSuperposition::product(const CoherentSuperposition& s, cplx lo) {
  std::vector<TwoModeTerm> terms;
  terms.reserve(s.size());
  for (const auto& t : s.terms()) terms.push_back({t.coeff, t.amp, lo});
  return TwoModeSuperposition(std::move(terms));
}

double TwoModeSuperposition::norm_squared() const { return std::real(inner(*this, *this)); }

TwoModeSuperposition operator*(cplx c, const TwoModeSuperposition& s) {
  TwoModeSuperposition out;
  out.terms_.reserve(s.terms_.size());
  for (const auto& t : s.terms_) out.terms_.push_back({c * t.coeff, t.amp0, t.amp1});
  return out;
}

cplx inner(const TwoModeSuperposition& s1, const TwoModeSuperposition& s2) {
  return sesquilinear(s1, s2, product_overlap);
}

QfiInput attach_lo(const CoherentMixture& m, cplx beta) {
  QfiInput out;
  out.mixture.reserve(m.components.size());
  for (const auto& c : m.components) {
    out.mixture.push_back({c.weight, TwoModeSuperposition::product(c.state, beta)});
  }
  return out;
}

cplx h_element(cplx g0, cplx g1, cplx d0, cplx d1) {
  const cplx ov = product_overlap(g0, g1, d0, d1);
  if (ov == cplx{}) return {};
  const cplx i{0.0, 1.0};
  return -i * (std::conj(g0) * d1 - d0 * std::conj(g1)) * ov;
}

cplx h2_element(cplx g0, cplx g1, cplx d0, cplx d1) {
  const cplx ov = product_overlap(g0, g1, d0, d1);
  if (ov == cplx{}) return {};
  // H^2 = -(a0^dag^2 a1^2 - n0 (n1 + 1) - (n0 + 1) n1 + a0^2 a1^dag^2), normal ordered per mode.
  const cplx x0 = std::conj(g0);
  const cplx x1 = std::conj(g1);
  const cplx n0 = x0 * d0;
  const cplx n1 = x1 * d1;
  return -(x0 * x0 * d1 * d1 - n0 * (n1 + 1.0) - (n0 + 1.0) * n1 + d0 * d0 * x1 * x1) * ov;
}

cplx h_matrix_element(const TwoModeSuperposition& bra, const TwoModeSuperposition& ket) {
  return sesquilinear(bra, ket, h_element);
}

cplx h2_matrix_element(const TwoModeSuperposition& bra, const TwoModeSuperposition& ket) {
  return sesquilinear(bra, ket, h2_element);
}

double qfi_mixed(const QfiInput& input) {
  std::vector<const QfiComponent*> support;
  for (const auto& c : input.mixture) {
    if (c.weight > input.support_threshold) support.push_back(&c);
  }
  if (support.empty()) throw EmptySupport("no mixture weight exceeds the support threshold");

  double first = 0.0;
  for (const auto* c : support) {
    first += 4.0 * c->weight * std::real(h2_matrix_element(c->state, c->state));
  }
  double second = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i; j < support.size(); ++j) {
      const double li = support[i]->weight;
      const double lj = support[j]->weight;
      if (li + lj < kPairSumFloor) continue;
      const double h = std::norm(h_matrix_element(support[i]->state, support[j]->state));
      const double term = 8.0 * li * lj / (li + lj) * h;
      second += (i == j) ? term : 2.0 * term;
    }
  }
  return first - second;
}

double qfi_pure(const TwoModeSuperposition& psi) {
  const double h2 = std::real(h2_matrix_element(psi, psi));
  const double h = std::real(h_matrix_element(psi, psi));
  return 4.0 * (h2 - h * h);
}

double pure_qfi(const CatParams& p, double chi, double lo_mag) {
  return qfi_pure(TwoModeSuperposition::product(make_state(p), std::polar(lo_mag, chi)));
}

double qfi_ratio(const CatParams& p, double eta, double chi, LoSettings lo) {
  check_eta(eta);
  const double pure = pure_qfi(p, chi, lo.magnitude);
  const double lo_noisy = lo.lossy ? std::sqrt(eta) * lo.magnitude : lo.magnitude;
  const double noisy = qfi_mixed(attach_lo(lossy_state(p, eta), std::polar(lo_noisy, chi)));
  if (pure == 0.0) throw NumericError("pure-state QFI vanishes; ratio undefined");
  return noisy / pure;
}

double delta_qfi(double eta, double chi, const CatParams& hhg, const CatParams& odd,
                 LoSettings lo) {
  return qfi_ratio(hhg, eta, chi, lo) - qfi_ratio(odd, eta, chi, lo);
}

double chi_derivative(const CatParams& p, double eta, double chi, LoSettings lo, double step) {
  return (qfi_ratio(p, eta, chi + step, lo) - qfi_ratio(p, eta, chi - step, lo)) / (2.0 * step);
}

}  // namespace catqfi

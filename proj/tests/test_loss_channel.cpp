#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "catqfi/cat_states.hpp"
#include "catqfi/errors.hpp"
#include "catqfi/fock_oracle.hpp"
#include "catqfi/loss_channel.hpp"
#include "catqfi/metrics.hpp"
#include "helpers.hpp"

using namespace catqfi;
using testing::hs_distance_sq;

namespace {

void check_mixture_invariants(const CoherentMixture& m) {
  double total = 0.0;
  for (const auto& c : m.components) {
    CHECK(c.weight >= 0.0);
    total += c.weight;
    CHECK(std::abs(c.state.norm_squared() - 1.0) < 1e-8);
  }
  CHECK(std::abs(total - 1.0) < 1e-10);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::size_t j = i + 1; j < m.rank(); ++j) {
      CHECK(std::abs(inner(m.components[i].state, m.components[j].state)) < 1e-8);
    }
  }
}

// Weights agree; components agree up to phase wherever the spectrum is not
// degenerate; the reconstructed operators agree everywhere.
void check_same_mixture(const CoherentMixture& closed, const CoherentMixture& general) {
  REQUIRE(closed.rank() == general.rank());
  for (std::size_t k = 0; k < closed.rank(); ++k) {
    CHECK(std::abs(closed.components[k].weight - general.components[k].weight) < 1e-10);
    const bool isolated = closed.rank() == 1 ||
                          std::abs(closed.components[0].weight - closed.components[1].weight) > 1e-6;
    if (isolated) {
      const double ov = std::abs(inner(closed.components[k].state, general.components[k].state));
      CHECK(ov > 1.0 - 1e-8);
    }
  }
  CHECK(hs_distance_sq(closed.to_operator(), general.to_operator()) < 1e-16);
}

}  // namespace

TEST_CASE("eta outside [0, 1] is rejected") {
  const auto s = CoherentSuperposition::coherent(1.0);
  CHECK_THROWS_AS(apply_loss(s, -0.1), DomainError);
  CHECK_THROWS_AS(apply_loss(s, 1.1), DomainError);
  CHECK_THROWS_AS(zeta(1.0, Parity::odd, 2.0), DomainError);
  CHECK_THROWS_AS(lossy_hhg(1.0, -0.5, std::nan("")), DomainError);
}

TEST_CASE("identity channel at eta = 1") {
  const auto s = hhg_cat(2.0, cplx{0.3, -0.4});
  const auto op = apply_loss(s, 1.0);
  const auto c = s.coefficients();
  CHECK(op.amps == s.amplitudes());
  CHECK((op.mat - c * c.adjoint()).norm() < 1e-15);
}

TEST_CASE("coherent states stay pure") {
  const auto op = apply_loss(CoherentSuperposition::coherent(cplx{2.0, 1.0}), 0.36);
  REQUIRE(op.amps.size() == 1);
  CHECK(std::abs(op.amps[0] - cplx{1.2, 0.6}) < 1e-15);
  CHECK(std::abs(op.mat(0, 0) - 1.0) < 1e-15);
  const auto m = lossy_state(CatParams::coherent(3.0), 0.5);
  REQUIRE(m.rank() == 1);
  CHECK(m.components[0].weight == doctest::Approx(1.0));
}

TEST_CASE("odd cat coherences decay") {
  const auto s = even_odd_cat(2.0, Parity::odd);
  const auto op = apply_loss(s, 0.9);
  const auto c = s.coefficients();
  const cplx damping = op.mat(0, 1) / (c(0) * std::conj(c(1)));
  CHECK(std::abs(damping - std::exp(-0.8)) < 1e-14);
  CHECK(std::abs(op.trace() - 1.0) < 1e-12);

  const auto rho = fock::loss_kraus(fock::density(fock::to_fock(s, 60)), 0.9);
  CHECK((testing::to_fock(op, 60) - rho).norm() < 1e-10);
}

TEST_CASE("channel composition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CoherentTerm> terms;
    for (int i = 0; i < 3; ++i) terms.push_back({testing::random_amp(rng, 1.0), testing::random_amp(rng, 3.0)});
    const auto s = CoherentSuperposition(terms).normalized();
    const double e1 = 0.1 + 0.9 * std::uniform_real_distribution<>()(rng);
    const double e2 = std::uniform_real_distribution<>()(rng);
    const auto twice = apply_loss(apply_loss(s, e1), e2);
    const auto once = apply_loss(s, e1 * e2);
    CHECK(hs_distance_sq(twice, once) < 1e-20);
    CHECK(std::abs(twice.trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("merged operators") {
  CoherentOperator op;
  op.amps = {1.0, 1.0 + 1e-14, -1.0};
  op.mat = Eigen::MatrixXcd::Constant(3, 3, 0.25);
  const auto m = op.merged();
  REQUIRE(m.amps.size() == 2);
  CHECK(std::abs(m.mat(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(m.mat(0, 1) - 0.5) < 1e-15);
  CHECK(hs_distance_sq(op, m) < 1e-24);
}

TEST_CASE("spectral decomposition of a pure operator") {
  const auto s = hhg_cat(1.5, -0.5);
  const auto m = spectral_decompose(CoherentOperator::pure(s));
  REQUIRE(m.rank() == 1);
  CHECK(m.components[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(inner(m.components[0].state, s)) - 1.0) < 1e-12);
}

TEST_CASE("ill-conditioned gram matrix is reported") {
  CoherentOperator op;
  op.amps = {1.0, 1.0 + 1e-9};
  op.mat = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(spectral_decompose(op), IllConditionedGram);
}

TEST_CASE("zeta") {
  CHECK(zeta(3.0, Parity::odd, 1.0) == 0.0);
  CHECK(zeta(3.0, Parity::even, 1.0) == 0.0);
  for (auto p : {Parity::even, Parity::odd}) {
    CHECK(std::abs(zeta(50.0, p, 0.7) - 0.5) < 1e-12);
  }
  const double z = zeta(10.0, Parity::odd, 0.983);
  CHECK(z == doctest::Approx(0.5 * (1.0 - std::exp(-200.0 * 0.017))).epsilon(1e-10));
  CHECK(z == doctest::Approx(0.483).epsilon(1e-3));

  // Weight of the opposite-parity component in the general decomposition.
  const auto m = spectral_decompose(apply_loss(even_odd_cat(10.0, Parity::odd), 0.99));
  const double zg = zeta(10.0, Parity::odd, 0.99);
  CHECK(std::min(m.components[0].weight, m.components[1].weight) ==
        doctest::Approx(std::min(zg, 1.0 - zg)).epsilon(1e-10));
}

TEST_CASE("lossy even/odd limits") {
  const auto pure = lossy_even_odd(10.0, Parity::odd, 1.0);
  REQUIRE(pure.rank() == 1);
  CHECK(std::abs(std::abs(inner(pure.components[0].state, even_odd_cat(10.0, Parity::odd))) - 1.0) < 1e-12);

  const auto vac = lossy_even_odd(10.0, Parity::even, 0.0);
  REQUIRE(vac.rank() == 1);
  CHECK(vac.components[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(inner(vac.components[0].state, CoherentSuperposition::coherent(0.0))) - 1.0) < 1e-12);

  const auto vac_odd = lossy_even_odd(10.0, Parity::odd, 0.0);
  REQUIRE(vac_odd.rank() == 1);
  CHECK(purity(vac_odd) == doctest::Approx(1.0));
}

TEST_CASE("lossy hhg limits") {
  const auto m = lossy_hhg(10.5, -0.5, 1.0);
  REQUIRE(m.rank() == 1);
  CHECK(m.components[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(lossy_hhg(10.5, -0.5, 0.983)) == doctest::Approx(0.97).epsilon(0.01));
  const auto vac = lossy_hhg(10.5, -0.5, 0.0);
  REQUIRE(vac.rank() == 1);
  CHECK(vac.components[0].state.terms()[0].amp == cplx{});
}

TEST_CASE("closed forms match the general decomposition") {
  for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    for (int i = 0; i <= 10; ++i) {
      const double eta = 0.1 * i;
      CAPTURE(a);
      CAPTURE(eta);
      for (auto p : {Parity::even, Parity::odd}) {
        const auto closed = lossy_even_odd(a, p, eta);
        check_mixture_invariants(closed);
        check_same_mixture(closed, spectral_decompose(apply_loss(even_odd_cat(a, p), eta)));
      }
      for (double d : {-0.5, -0.1, 1.0}) {
        CAPTURE(d);
        const auto closed = lossy_hhg(a, d, eta);
        check_mixture_invariants(closed);
        check_same_mixture(closed, spectral_decompose(apply_loss(hhg_cat(a, d), eta)));
      }
    }
  }
}

TEST_CASE("closed forms for complex amplitudes") {
  const cplx a{1.2, -2.0};
  const cplx d{-0.3, 0.4};
  for (double eta : {0.2, 0.75, 0.95}) {
    check_same_mixture(lossy_hhg(a, d, eta), spectral_decompose(apply_loss(hhg_cat(a, d), eta)));
    check_same_mixture(lossy_even_odd(a, Parity::odd, eta),
                       spectral_decompose(apply_loss(even_odd_cat(a, Parity::odd), eta)));
  }
}

TEST_CASE("hhg weights depend only on the displacement") {
  for (double eta : {0.3, 0.8, 0.983}) {
    const auto ref = lossy_hhg(10.5, -0.5, eta);
    for (double a : {5.0, 20.0, 100.0}) {
      const auto m = lossy_hhg(a, -0.5, eta);
      REQUIRE(m.rank() == ref.rank());
      for (std::size_t k = 0; k < m.rank(); ++k) {
        CHECK(std::abs(m.components[k].weight - ref.components[k].weight) < 1e-12);
      }
    }
  }
}

TEST_CASE("mixture reconstructs a valid density operator") {
  const auto op = lossy_hhg(2.0, cplx{0.0, 0.7}, 0.6).to_operator();
  CHECK((op.mat - op.mat.adjoint()).norm() < 1e-12);
  CHECK(std::abs(op.trace() - 1.0) < 1e-10);
  const auto s = gram_matrix(op.amps);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s * op.mat * s);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("canonical phase") {
  const CoherentSuperposition s{{cplx{0.0, 1.0}, 1.0}, {cplx{0.0, -2.0}, 3.0}};
  const auto c = canonical_phase(s);
  CHECK(std::abs(c.terms()[1].coeff - 2.0) < 1e-15);
  CHECK(std::abs(c.terms()[0].coeff + 1.0) < 1e-15);
}

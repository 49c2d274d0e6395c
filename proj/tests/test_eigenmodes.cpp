#include "doctest.h"

#include "dwtunnel/eigenmodes.hpp"
#include "dwtunnel/potentials.hpp"

#include <cmath>

using namespace dwt;

namespace {

std::vector<ModelParams> sweep() {
  std::vector<ModelParams> out;
  for (double g : {1.0, 2.0})
    for (double s : {1.0, 2.0, 4.0, 8.0})
      for (double e : {0.0, 0.75}) out.emplace_back(g, s, e);
  return out;
}

}  // namespace

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS(ModelParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(normalize(ModelParams(), 2), std::invalid_argument);
  CHECK(ModelParams(1.0, 4.0).splitting() == 1.0 / 16.0);
}

TEST_CASE("normalization constants at gamma = sigma = 1") {
  // 1/sqrt of the unnormalized L2 norms, from an arbitrary-precision quadrature.
  const ModelParams p;
  CHECK(std::abs(normalize(p, 0).norm_constant() - 0.614960752893024718) < 1e-9);
  CHECK(std::abs(normalize(p, 1).norm_constant() - 0.952268841051248521) < 1e-9);
}

TEST_CASE("excited state is alpha times the ground state") {
  const ModelParams p(2.0, 1.0, 0.75);
  for (double s : {-1.3, -0.2, 0.0, 0.4, 2.1}) {
    CAPTURE(s);
    CHECK(psi_unnormalized(p, 1, s) ==
          doctest::Approx((0.75 + std::tanh(2.0 * s)) * psi_unnormalized(p, 0, s)).epsilon(1e-14));
  }
  // tails underflow instead of raising
  CHECK(psi_unnormalized(ModelParams(), 0, 60.0) == 0.0);
}

TEST_CASE("symmetric modes") {
  const ModelParams p(1.0, 2.0);
  const Mode m0 = normalize(p, 0);
  const Mode m1 = normalize(p, 1);
  CHECK(m1(0.0) == 0.0);
  CHECK(m0(0.7) == m0(-0.7));
  CHECK(m1(0.7) == -m1(-0.7));
  const Grid g = Grid::symmetric(p.cutoff(), 801);
  CHECK(count_nodes(m0, g) == 0);
  CHECK(count_nodes(m1, g) == 1);
}

TEST_CASE("orthonormality over the sweep") {
  for (const auto& p : sweep()) {
    CAPTURE(p.gamma());
    CAPTURE(p.sigma());
    CAPTURE(p.eps());
    const Mode m0 = normalize(p, 0);
    const Mode m1 = normalize(p, 1);
    CHECK(std::abs(overlap(m0, m0) - 1.0) < 1e-10);
    CHECK(std::abs(overlap(m1, m1) - 1.0) < 1e-10);
    CHECK(std::abs(overlap(m0, m1)) < 1e-8);
  }
}

TEST_CASE("schrodinger residuals over the sweep") {
  for (const auto& p : sweep()) {
    CAPTURE(p.gamma());
    CAPTURE(p.sigma());
    CAPTURE(p.eps());
    const Mode m0 = normalize(p, 0);
    const Mode m1 = normalize(p, 1);
    const PotentialSpec v0(p, 0);
    const PotentialSpec v1(p, 1);
    const Grid g = Grid::symmetric(p.cutoff(), 2001);
    CHECK(schrodinger_residual(m0, v0, 0.0, g) < 1e-6);
    CHECK(schrodinger_residual(m1, v0, p.splitting(), g) < 1e-6);
    CHECK(schrodinger_residual(m1, v1, 0.0, g) < 1e-6);
  }
}

TEST_CASE("a wrong eigenvalue is detected") {
  const ModelParams p;
  const Mode m0 = normalize(p, 0);
  const Grid g = Grid::symmetric(p.cutoff(), 2001);
  CHECK(schrodinger_residual(m0, PotentialSpec(p, 0), 0.1, g) > 1e-2);
}

TEST_CASE("log derivative") {
  const ModelParams p(2.0, 1.5, 0.75);
  for (double s : {-0.8, 0.1, 0.9}) {
    const double lnpsi = first_derivative([&](double x) { return std::log(psi_unnormalized(p, 0, x)); }, s, 1e-3);
    CHECK(std::abs(log_derivative_beta(p, s) - lnpsi) < 1e-8);
    const double dbeta = first_derivative([&](double x) { return log_derivative_beta(p, x); }, s, 1e-3);
    CHECK(std::abs(log_derivative_beta_prime(p, s) - dbeta) < 1e-8);
  }
}

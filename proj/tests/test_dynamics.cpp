#include "doctest.h"

#include "dwtunnel/dynamics.hpp"

#include <cmath>
#include <numbers>

using namespace dwt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("norms") {
  for (double sg : {1.0, 2.0, 4.0, 8.0}) {
    const ModelParams p(1.0, sg, 0.75);
    for (double frac : {0.0, 0.125, 0.25, 0.5, 1.0, 2.0}) {
      const double t = frac * kPi * sg;
      CHECK(std::abs(norm_squared(state(p, Flavor::stable, t)) - 1.0) < 1e-10);
      CHECK(std::abs(norm_squared(state(p, Flavor::unstable, t)) - 0.5 * (std::exp(-2.0 * t / sg) + 1.0)) < 1e-8);
    }
  }
}

TEST_CASE("both flavors start from the same state") {
  const ModelParams p(2.0, 2.0);
  const auto a = state(p, Flavor::stable, 0.0);
  const auto b = state(p, Flavor::unstable, 0.0);
  for (double s : {-1.0, 0.0, 0.5}) CHECK(a(s) == b(s));
  CHECK_THROWS_AS(state(p, Flavor::unstable, -1.0), std::invalid_argument);
}

TEST_CASE("stable state tunnels to the mirror image") {
  const ModelParams p(1.0, 2.0);
  const auto start = state(p, Flavor::stable, 0.0);
  const auto half = state(p, Flavor::stable, kPi * 2.0);
  for (double s = -4.0; s <= 4.0; s += 0.1) CHECK(std::abs(density(half, s) - density(start, -s)) < 1e-8);
  CHECK(side_probability(start, true) > 0.5);
  CHECK(std::abs(side_probability(start, true) - side_probability(half, false)) < 1e-10);
}

TEST_CASE("unstable state collapses onto the excited mode") {
  const ModelParams p;
  const auto late = state(p, Flavor::unstable, 10.0 * kPi);
  for (double s = -4.0; s <= 4.0; s += 0.1) {
    const double v = late.excited()(s);
    CHECK(std::abs(density(late, s) - 0.5 * v * v) < 1e-6);
  }
}

TEST_CASE("kernel route agrees with direct cells") {
  const ModelParams p;
  const Grid sg(-3.0, 3.0, 7);
  const Grid pg(-2.0, 2.0, 5);
  const ModeWignerKernels kernels(p, sg, pg);
  const auto st = state(p, Flavor::stable, kPi / 4.0);
  const WignerGrid w = wigner(st, kernels);
  for (int i = 0; i < sg.size(); ++i) {
    for (int j = 0; j < pg.size(); ++j) {
      const auto direct = wigner_cell(st, sg[i], pg[j]);
      CHECK(std::abs(direct.real() - w.values(i, j)) < 1e-10);
      CHECK(std::abs(direct.imag()) < 1e-10);
    }
  }
}

TEST_CASE("wigner marginal, total and symmetry") {
  const ModelParams p;
  const Grid sg(-6.0, 6.0, 121);
  const Grid pg(-8.0, 8.0, 161);
  const ModeWignerKernels kernels(p, sg, pg);
  for (Flavor f : {Flavor::stable, Flavor::unstable}) {
    const auto st = state(p, f, kPi / 8.0);
    const WignerGrid w = wigner(st, kernels);
    CHECK(w.imag_residue < kWignerImagLimit);
    CHECK((wigner_position_marginal(w) - density(st, sg)).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(std::abs(wigner_total(w) - norm_squared(st)) < 1e-4);
    const Eigen::MatrixXd r = wigner_modulus_rescaled(w);
    CHECK(r.maxCoeff() == 1.0);
    CHECK(r.minCoeff() >= 0.0);
  }
  const WignerGrid w0 = wigner(state(p, Flavor::stable, 0.0), kernels);
  const WignerGrid wpi = wigner(state(p, Flavor::stable, kPi), kernels);
  CHECK((w0.values - wpi.values.reverse()).cwiseAbs().maxCoeff() < 1e-6);
}

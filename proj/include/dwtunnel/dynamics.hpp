// Two-level dynamics (hbar = 1, omega1 = 1/sigma):
//   stable    Psi_S(t, s) = (psi0 + exp(-i t/sigma) psi1) / sqrt(2)
//   unstable  Psi_U(t, s) = (exp(-t/sigma) psi0 + psi1) / sqrt(2)
// and their Wigner quasi-probability distributions
//   W(s, p) = (1/pi) Int dy Psi*(s + y) Psi(s - y) exp(2 i p y).
#pragma once

#include "dwtunnel/eigenmodes.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <stdexcept>
#include <string_view>

namespace dwt {

enum class Flavor { stable, unstable };

std::string_view to_string(Flavor flavor);

class SuperpositionState {
 public:
  SuperpositionState(const ModelParams& params, Flavor flavor, double time);

  const ModelParams& params() const { return params_; }
  Flavor flavor() const { return flavor_; }
  double time() const { return time_; }
  const Mode& ground() const { return ground_; }
  const Mode& excited() const { return excited_; }

  /// Weights of psi0 and psi1.
  const std::array<std::complex<double>, 2>& coefficients() const { return coefficients_; }

  std::complex<double> operator()(double s) const {
    return coefficients_[0] * ground_(s) + coefficients_[1] * excited_(s);
  }

 private:
  ModelParams params_;
  Flavor flavor_;
  double time_;
  Mode ground_;
  Mode excited_;
  std::array<std::complex<double>, 2> coefficients_;
};

/// Builds the state; the unstable flavor requires t >= 0.
SuperpositionState state(const ModelParams& params, Flavor flavor, double t);

double density(const SuperpositionState& state, double s);

Eigen::VectorXd density(const SuperpositionState& state, const Grid& grid);

double norm_squared(const SuperpositionState& state, double tol = 1e-13);

/// Probability of s > 0 (s < 0 when `right` is false).
double side_probability(const SuperpositionState& state, bool right, double tol = 1e-13);

/// Default tolerance of each Wigner y-integral.
inline constexpr double kWignerTolerance = 1e-11;

/// Quadrature of the y-integral did not meet tolerance at a cell.
class WignerResolutionError : public std::runtime_error {
 public:
  WignerResolutionError(double s, double p, double error);
  double s() const { return s_; }
  double p() const { return p_; }

 private:
  double s_;
  double p_;
};

/// Cross-Wigner kernels of the two real modes,
///   K_ij(s, p) = (1/pi) Int dy psi_i(s + y) psi_j(s - y) exp(2 i p y),
/// tabulated on an (s, p) grid. Every superposition of psi0 and psi1 has
/// W = sum_ij conj(c_i) c_j K_ij, so one table serves all flavors and times.
class ModeWignerKernels {
 public:
  ModeWignerKernels(const ModelParams& params, const Grid& s_grid, const Grid& p_grid,
                    double tol = kWignerTolerance);

  const ModelParams& params() const { return params_; }
  const Grid& s_grid() const { return s_grid_; }
  const Grid& p_grid() const { return p_grid_; }

  /// Real and imaginary parts of K_ij, indexed (s, p).
  const Eigen::MatrixXd& real(int i, int j) const { return re_[2 * i + j]; }
  const Eigen::MatrixXd& imag(int i, int j) const { return im_[2 * i + j]; }

 private:
  ModelParams params_;
  Grid s_grid_;
  Grid p_grid_;
  std::array<Eigen::MatrixXd, 4> re_;
  std::array<Eigen::MatrixXd, 4> im_;
};

/// Direct evaluation of one cell: (1/pi) Int dy Psi*(s+y) Psi(s-y) e^{2ipy}.
std::complex<double> wigner_cell(const SuperpositionState& state, double s, double p,
                                 double tol = kWignerTolerance);

struct WignerGrid {
  Grid s_grid;
  Grid p_grid;
  double time;
  /// W(s_i, p_j).
  Eigen::MatrixXd values;
  /// max |Im W| / max |W| before the imaginary part was discarded.
  double imag_residue;
};

/// Reality threshold asserted on every Wigner grid.
inline constexpr double kWignerImagLimit = 1e-10;

WignerGrid wigner(const SuperpositionState& state, const ModeWignerKernels& kernels);

WignerGrid wigner(const SuperpositionState& state, const Grid& s_grid, const Grid& p_grid);

/// |W| / max|W|; throws std::domain_error for an all-zero grid.
Eigen::MatrixXd wigner_modulus_rescaled(const WignerGrid& w);

/// Sum_p W(s, p) dp for every s.
Eigen::VectorXd wigner_position_marginal(const WignerGrid& w);

/// Sum W ds dp.
double wigner_total(const WignerGrid& w);

}  // namespace dwt

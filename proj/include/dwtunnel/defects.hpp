// Deformed topological defects supporting the double-well modes.
//
// Starting from the phi^4 kink phi(s) = tanh(s), the deformation chain
//   xi'  = z_xi  = xi_phi  y_phi,
//   chi' = w_chi = chi_phi y_phi = alpha(phi) z_xi,
// produces a kink xi with xi' = psi0 and a lump chi with chi' = psi1
// (unnormalized modes). The BPS potentials are U = z^2/2 and W = w^2/2.
#pragma once

#include "dwtunnel/eigenmodes.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string_view>

namespace dwt {

enum class DefectKind { kink, lump };

std::string_view to_string(DefectKind kind);

/// Primitive phi^4 kink, + sign branch.
double phi_kink(double s);

/// y_phi = 1 - phi^2.
double y_phi(double phi);

struct SuperpotentialDerivs {
  double z_xi;
  double w_chi;
};

/// z_xi and w_chi as functions of phi for gamma in {1, 2}, eps = 0:
///   gamma = 1: z = exp(-(1 + phi^2) / (8 sigma^2 (1 - phi^2))) / sqrt(1 - phi^2)
///   gamma = 2: z = (1 + phi^2)/(1 - phi^2) exp(-(1 + 6phi^2 + phi^4) / (32 sigma^2 (1 - phi^2)^2))
/// and w = alpha(phi) z. Throws std::domain_error for |phi| >= 1 and
/// std::invalid_argument outside the closed-form parameter set.
SuperpotentialDerivs superpotential_derivs(const ModelParams& params, double phi);

/// The literature's printed z_xi (whose exponents disagree with the
/// integrated profiles); diagnostic only.
SuperpotentialDerivs superpotential_derivs_printed(const ModelParams& params, double phi);

/// Deformation function alpha(phi): phi for gamma = 1, 2phi/(1+phi^2) for gamma = 2.
double deformation_alpha(const ModelParams& params, double phi);

/// True when the Erf closed forms apply (gamma in {1, 2}, eps = 0).
bool has_closed_forms(const ModelParams& params);

/// Erf closed forms xi(phi), chi(phi), unnormalized.
double field_of_phi(const ModelParams& params, DefectKind kind, double phi);

/// phi -> 1 limit of field_of_phi.
double field_limit(const ModelParams& params, DefectKind kind);

/// A defect profile sampled on a grid by cumulative integration of the
/// matching unnormalized mode, anchored at s = 0.
class DefectProfile {
 public:
  DefectProfile(const ModelParams& params, DefectKind kind, const Grid& grid, double anchor,
                Eigen::VectorXd values);

  const ModelParams& params() const { return params_; }
  DefectKind kind() const { return kind_; }
  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }

  /// Value at s = 0.
  double anchor() const { return anchor_; }
  double asymptote_minus() const { return values_[0]; }
  double asymptote_plus() const { return values_[values_.size() - 1]; }
  double charge() const { return asymptote_plus() - asymptote_minus(); }

  /// Off-grid evaluation: anchor + integral of the mode from 0 to s.
  double operator()(double s) const;

 private:
  ModelParams params_;
  DefectKind kind_;
  Grid grid_;
  double anchor_;
  Eigen::VectorXd values_;
};

/// Raised when the profile grid does not cover the mode's support.
class GridTooNarrowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric grid wide enough for profile_numeric (mode tails below 1e-14 of peak).
Grid profile_grid(const ModelParams& params, int n_points);

DefectProfile profile_numeric(const ModelParams& params, DefectKind kind, const Grid& grid);

/// (field, potential) pairs sampled uniformly in phi on [-1 + delta, 1 - delta].
struct ParametricCurve {
  Eigen::VectorXd phi;
  Eigen::VectorXd field;
  Eigen::VectorXd potential;
  double delta;
};

ParametricCurve parametric_potential(const ModelParams& params, DefectKind kind, int n_samples);

}  // namespace dwt

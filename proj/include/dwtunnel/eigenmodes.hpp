// Closed-form ground and first excited states of the double-well family.
//
//   psi0(s) = cosh(g s) E(s),   psi1(s) = alpha(s) psi0(s),   alpha = eps + tanh(g s)
//   E(s)    = exp(-[cosh 2gs + eps (2gs + sinh 2gs)] / (8 g^2 sigma^2))
//
// with eigenvalues 0 and 1/sigma^2 of the potential V0 = psi0''/psi0.
#pragma once

#include "dwtunnel/numerics.hpp"

#include <Eigen/Core>

#include <functional>

namespace dwt {

/// One model instance (gamma, sigma, eps). omega1 = kappa1 = 1/sigma.
class ModelParams {
 public:
  explicit ModelParams(double gamma = 1.0, double sigma = 1.0, double eps_asym = 0.0);

  double gamma() const { return gamma_; }
  double sigma() const { return sigma_; }
  double eps() const { return eps_; }
  double omega1() const { return 1.0 / sigma_; }
  double kappa1() const { return 1.0 / sigma_; }
  /// Level splitting omega1^2.
  double splitting() const { return 1.0 / (sigma_ * sigma_); }
  bool symmetric() const { return eps_ == 0.0; }

  /// Symmetric truncation half-width for integrals over the real line.
  double cutoff() const { return envelope_cutoff(gamma_, sigma_, eps_); }

  bool operator==(const ModelParams&) const = default;

 private:
  double gamma_;
  double sigma_;
  double eps_;
};

/// alpha(s) = eps + tanh(g s), the ratio psi1/psi0.
double multiplier_alpha(const ModelParams& params, double s);
double multiplier_alpha_prime(const ModelParams& params, double s);
double multiplier_alpha_second(const ModelParams& params, double s);

/// beta(s) = (ln psi0)'(s), analytic.
double log_derivative_beta(const ModelParams& params, double s);
double log_derivative_beta_prime(const ModelParams& params, double s);

/// Unnormalized closed form; index 0 or 1. Underflows to 0 far in the tails.
double psi_unnormalized(const ModelParams& params, int index, double s);

template <typename Derived>
Eigen::ArrayXd psi_unnormalized(const ModelParams& params, int index, const Eigen::ArrayBase<Derived>& s) {
  return s.derived().unaryExpr([&](double x) { return psi_unnormalized(params, index, x); });
}

/// A normalized eigenmode. Immutable; evaluation is pure.
class Mode {
 public:
  Mode(const ModelParams& params, int index, double norm_constant);

  const ModelParams& params() const { return params_; }
  int index() const { return index_; }
  double eigenvalue() const { return index_ == 0 ? 0.0 : params_.splitting(); }
  double norm_constant() const { return norm_constant_; }

  double operator()(double s) const { return norm_constant_ * psi_unnormalized(params_, index_, s); }

  Eigen::VectorXd sample(const Grid& grid) const;

 private:
  ModelParams params_;
  int index_;
  double norm_constant_;
};

/// Normalization quadrature tolerance (absolute, on the unnormalized L2 norm).
inline constexpr double kNormTolerance = 1e-12;

Mode normalize(const ModelParams& params, int index, double tol = kNormTolerance);

/// Sign changes of the sampled mode, ignoring |value| < 1e-14.
int count_nodes(const Mode& mode, const Grid& grid);

/// max over interior grid points of |-psi'' + V psi - w^2 psi| / max|psi|,
/// with psi'' from the five-point stencil.
double schrodinger_residual(const Mode& mode, const std::function<double(double)>& potential,
                            double eigenvalue, const Grid& grid, double h = kDefaultStep);

/// <a|b> over the truncated real line.
double overlap(const Mode& a, const Mode& b, double tol = 1e-13);

}  // namespace dwt

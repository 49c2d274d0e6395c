#include "dwtunnel/defects.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dwt {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void check_phi(double phi) {
  if (!(std::abs(phi) < 1.0)) throw std::domain_error("deformation chain requires |phi| < 1");
}

void check_closed_forms(const ModelParams& params) {
  if (!has_closed_forms(params)) {
    throw std::invalid_argument("closed forms exist only for gamma in {1, 2} and eps = 0");
  }
}

int mode_index(DefectKind kind) { return kind == DefectKind::kink ? 0 : 1; }

// Relative tolerances for the parametric endpoint trimming.
constexpr double kKinkEndpointRatio = 1e-12;
constexpr double kLumpEndpointGap = 1e-10;

// Smallest s > 0 past which pred(s) holds, by outward march and bisection.
template <typename Pred>
double first_crossing(Pred pred, double step) {
  double lo = 0.0;
  double hi = step;
  while (!pred(hi)) {
    lo = hi;
    hi += step;
    if (hi > 50.0) throw std::runtime_error("parametric trimming did not converge");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::string_view to_string(DefectKind kind) { return kind == DefectKind::kink ? "kink" : "lump"; }

double phi_kink(double s) { return std::tanh(s); }

double y_phi(double phi) { return 1.0 - phi * phi; }

bool has_closed_forms(const ModelParams& params) {
  return params.symmetric() && (params.gamma() == 1.0 || params.gamma() == 2.0);
}

double deformation_alpha(const ModelParams& params, double phi) {
  check_closed_forms(params);
  check_phi(phi);
  return params.gamma() == 1.0 ? phi : 2.0 * phi / (1.0 + phi * phi);
}

SuperpotentialDerivs superpotential_derivs(const ModelParams& params, double phi) {
  check_closed_forms(params);
  check_phi(phi);
  const double sigma2 = params.sigma() * params.sigma();
  const double p2 = phi * phi;
  const double one_minus = 1.0 - p2;
  double z = 0.0;
  if (params.gamma() == 1.0) {
    z = std::exp(-(1.0 + p2) / (8.0 * sigma2 * one_minus)) / std::sqrt(one_minus);
  } else {
    const double c = (1.0 + p2) / one_minus;  // cosh(2s)
    z = c * std::exp(-(1.0 + 6.0 * p2 + p2 * p2) / (32.0 * sigma2 * one_minus * one_minus));
  }
  return {z, deformation_alpha(params, phi) * z};
}

SuperpotentialDerivs superpotential_derivs_printed(const ModelParams& params, double phi) {
  check_closed_forms(params);
  check_phi(phi);
  const double sigma2 = params.sigma() * params.sigma();
  const double p2 = phi * phi;
  double z = 0.0;
  if (params.gamma() == 1.0) {
    z = std::exp(-(3.0 - 2.0 * p2) / (8.0 * sigma2 * (1.0 - p2))) / std::sqrt(1.0 - p2);
  } else {
    z = (1.0 + p2) / (1.0 - p2) *
        std::exp(-(1.0 + 2.0 * p2 + p2 * p2) / (16.0 * sigma2 * (1.0 + p2) * (1.0 + p2)));
  }
  return {z, deformation_alpha(params, phi) * z};
}

double field_of_phi(const ModelParams& params, DefectKind kind, double phi) {
  check_closed_forms(params);
  check_phi(phi);
  const double sigma = params.sigma();
  const double sigma2 = sigma * sigma;
  const double one_minus = 1.0 - phi * phi;
  if (params.gamma() == 1.0) {
    if (kind == DefectKind::kink) {
      return kSqrtPi * sigma * std::exp(-1.0 / (8.0 * sigma2)) *
             erf(phi / (2.0 * sigma * std::sqrt(one_minus)));
    }
    return kSqrtPi * sigma * std::exp(1.0 / (8.0 * sigma2)) * erf(1.0 / (2.0 * sigma * std::sqrt(one_minus)));
  }
  if (kind == DefectKind::kink) {
    return kSqrtPi * sigma * std::exp(-1.0 / (32.0 * sigma2)) * erf(phi / (2.0 * sigma * one_minus));
  }
  return kSqrtPi * sigma * std::exp(1.0 / (32.0 * sigma2)) *
         erf((1.0 + phi * phi) / (4.0 * sigma * one_minus));
}

double field_limit(const ModelParams& params, DefectKind kind) {
  check_closed_forms(params);
  const double sigma = params.sigma();
  const double scale = params.gamma() == 1.0 ? 8.0 : 32.0;
  const double sign = kind == DefectKind::kink ? -1.0 : 1.0;
  return kSqrtPi * sigma * std::exp(sign / (scale * sigma * sigma));
}

DefectProfile::DefectProfile(const ModelParams& params, DefectKind kind, const Grid& grid, double anchor,
                             Eigen::VectorXd values)
    : params_(params), kind_(kind), grid_(grid), anchor_(anchor), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("profile: value count != grid size");
}

double DefectProfile::operator()(double s) const {
  const int index = mode_index(kind_);
  return anchor_ + integrate([&](double x) { return psi_unnormalized(params_, index, x); }, 0.0, s, 1e-13);
}

Grid profile_grid(const ModelParams& params, int n_points) {
  // psi^2 down by 1e-28 from its origin value, plus margin for the well peak.
  constexpr double kProfileLogDrop = 72.0;
  const double half = envelope_cutoff(params.gamma(), params.sigma(), params.eps(), kProfileLogDrop);
  return Grid::symmetric(half, n_points);
}

DefectProfile profile_numeric(const ModelParams& params, DefectKind kind, const Grid& grid) {
  const int index = mode_index(kind);
  auto mode = [&](double s) { return psi_unnormalized(params, index, s); };

  double peak = 0.0;
  for (int i = 0; i < grid.size(); ++i) peak = std::max(peak, std::abs(mode(grid[i])));
  const double edge = std::max(std::abs(mode(grid.min())), std::abs(mode(grid.max())));
  if (edge > 1e-14 * peak) {
    throw GridTooNarrowError("profile grid does not cover the mode support (edge/peak = " +
                             std::to_string(edge / peak) + ")");
  }
  if (!(grid.min() <= 0.0 && grid.max() >= 0.0)) {
    throw GridTooNarrowError("profile grid must contain s = 0");
  }

  const double anchor =
      kind == DefectKind::lump && has_closed_forms(params) ? field_of_phi(params, kind, 0.0) : 0.0;
  constexpr double kCellTol = 1e-14;
  Eigen::VectorXd values(grid.size());
  const int origin = grid.nearest_index(0.0);
  values[origin] = anchor + integrate(mode, 0.0, grid[origin], kCellTol);
  for (int i = origin + 1; i < grid.size(); ++i) {
    values[i] = values[i - 1] + integrate(mode, grid[i - 1], grid[i], kCellTol);
  }
  for (int i = origin - 1; i >= 0; --i) {
    values[i] = values[i + 1] - integrate(mode, grid[i], grid[i + 1], kCellTol);
  }
  return DefectProfile(params, kind, grid, anchor, std::move(values));
}

ParametricCurve parametric_potential(const ModelParams& params, DefectKind kind, int n_samples) {
  check_closed_forms(params);
  if (n_samples < 3) throw std::invalid_argument("parametric_potential: need at least 3 samples");

  const double step = 0.01 / params.gamma();
  double s_end = 0.0;
  if (kind == DefectKind::kink) {
    // U(phi(s)) = psi0(s)^2 / 2; find where it falls below the ratio past its peak.
    // Half the target leaves room for the sampled peak sitting below the true one.
    auto u = [&](double s) {
      const double z = psi_unnormalized(params, 0, s);
      return 0.5 * z * z;
    };
    double peak = 0.0;
    double s_peak = 0.0;
    for (double s = 0.0; s < params.cutoff(); s += step) {
      if (u(s) > peak) {
        peak = u(s);
        s_peak = s;
      }
    }
    s_end = s_peak + first_crossing([&](double ds) { return u(s_peak + ds) < 0.5 * kKinkEndpointRatio * peak; }, step);
  } else {
    const double limit = field_limit(params, kind);
    s_end = first_crossing(
        [&](double s) { return std::abs(field_of_phi(params, kind, phi_kink(s)) - limit) < kLumpEndpointGap; },
        step);
  }
  const double phi_end = phi_kink(s_end);
  if (!(phi_end < 1.0)) throw std::runtime_error("parametric trimming reached phi = 1");

  ParametricCurve curve;
  curve.delta = 1.0 - phi_end;
  curve.phi = Eigen::VectorXd::LinSpaced(n_samples, -phi_end, phi_end);
  curve.field.resize(n_samples);
  curve.potential.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double phi = curve.phi[k];
    const SuperpotentialDerivs d = superpotential_derivs(params, phi);
    const double deriv = kind == DefectKind::kink ? d.z_xi : d.w_chi;
    curve.field[k] = field_of_phi(params, kind, phi);
    curve.potential[k] = 0.5 * deriv * deriv;
  }
  return curve;
}

}  // namespace dwt

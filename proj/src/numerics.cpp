#include "dwtunnel/numerics.hpp"

#include <sstream>

namespace dwt {

Grid::Grid(double min, double max, int n_points) : min_(min), max_(max), n_(n_points) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw std::invalid_argument("grid: requires finite min < max");
  }
  if (n_points < 3 || n_points % 2 == 0) {
    throw std::invalid_argument("grid: point count must be odd and >= 3");
  }
}

int Grid::nearest_index(double x) const {
  const double t = std::round((x - min_) / spacing());
  return static_cast<int>(std::clamp(t, 0.0, static_cast<double>(n_ - 1)));
}

Eigen::VectorXd Grid::points() const {
  Eigen::VectorXd out(n_);
  for (int i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

namespace {

std::string quadrature_message(double estimate, double error_bound) {
  std::ostringstream os;
  os.precision(6);
  os << "integrate: subdivision budget exhausted (estimate " << estimate << ", error bound "
     << error_bound << ")";
  return os.str();
}

}  // namespace

QuadratureError::QuadratureError(double estimate, double error_bound)
    : std::runtime_error(quadrature_message(estimate, error_bound)),
      estimate_(estimate),
      error_bound_(error_bound) {}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const auto result = integrate_adaptive<double>(f, a, b, tol, 0.0);
  if (!result.converged) throw QuadratureError(result.value, result.error);
  return result.value;
}

double erf(double x) {
  // std::erf is accurate to a few ulp; folding through |x| makes oddness exact.
  const double v = std::erf(std::abs(x));
  return std::signbit(x) ? -v : v;
}

double second_derivative(const std::function<double(double)>& f, double s, double h) {
  const double f0 = f(s);
  const double fp1 = f(s + h);
  const double fm1 = f(s - h);
  const double fp2 = f(s + 2.0 * h);
  const double fm2 = f(s - 2.0 * h);
  return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
}

double first_derivative(const std::function<double(double)>& f, double s, double h) {
  return (-f(s + 2.0 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2.0 * h)) / (12.0 * h);
}

namespace {

// ln of the ground-state envelope, relative to nothing in particular.
double log_envelope(double gamma, double sigma, double eps, double s) {
  const double x = 2.0 * gamma * s;
  // cosh(x) + eps sinh(x) written as a sum of positive exponentials (|eps| < 1).
  const double mixed = 0.5 * ((1.0 + eps) * std::exp(x) + (1.0 - eps) * std::exp(-x));
  return 2.0 * log_cosh(gamma * s) - (mixed + eps * x) / (4.0 * gamma * gamma * sigma * sigma);
}

double side_cutoff(double gamma, double sigma, double eps, double log_drop, double direction) {
  const double reference = log_envelope(gamma, sigma, eps, 0.0);
  auto below = [&](double s) {
    return log_envelope(gamma, sigma, eps, direction * s) - reference < -log_drop;
  };
  // March outward past the peak, then bisect the crossing.
  const double step = 0.05 / gamma;
  double lo = 0.0;
  double hi = step;
  while (!below(hi)) {
    lo = hi;
    hi += step;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double envelope_cutoff(double gamma, double sigma, double eps, double log_drop) {
  if (!(gamma > 0.0) || !(sigma > 0.0) || !(std::abs(eps) < 1.0)) {
    throw std::invalid_argument("envelope_cutoff: requires gamma > 0, sigma > 0, |eps| < 1");
  }
  return std::max(side_cutoff(gamma, sigma, eps, log_drop, 1.0), side_cutoff(gamma, sigma, eps, log_drop, -1.0));
}

std::vector<int> local_minima(const Eigen::Ref<const Eigen::VectorXd>& values) {
  std::vector<int> out;
  for (Eigen::Index i = 1; i + 1 < values.size(); ++i) {
    if (values[i] < values[i - 1] && values[i] < values[i + 1]) out.push_back(static_cast<int>(i));
  }
  return out;
}

int count_sign_changes(const Eigen::Ref<const Eigen::VectorXd>& values, double threshold) {
  int changes = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::abs(v) < threshold) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace dwt

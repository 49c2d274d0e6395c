#include "dwtunnel/eigenmodes.hpp"

#include <cmath>
#include <stdexcept>

namespace dwt {

ModelParams::ModelParams(double gamma, double sigma, double eps_asym)
    : gamma_(gamma), sigma_(sigma), eps_(eps_asym) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("model: gamma must be > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("model: sigma must be > 0");
  if (!(std::abs(eps_asym) < 1.0)) throw std::invalid_argument("model: |eps| must be < 1");
}

double multiplier_alpha(const ModelParams& params, double s) {
  return params.eps() + std::tanh(params.gamma() * s);
}

double multiplier_alpha_prime(const ModelParams& params, double s) {
  const double sech = 1.0 / std::cosh(params.gamma() * s);
  return params.gamma() * sech * sech;
}

double multiplier_alpha_second(const ModelParams& params, double s) {
  const double g = params.gamma();
  const double sech = 1.0 / std::cosh(g * s);
  return -2.0 * g * g * sech * sech * std::tanh(g * s);
}

double log_derivative_beta(const ModelParams& params, double s) {
  const double g = params.gamma();
  const double sigma2 = params.sigma() * params.sigma();
  const double c = std::cosh(g * s);
  return g * std::tanh(g * s) - multiplier_alpha(params, s) * c * c / (2.0 * g * sigma2);
}

double log_derivative_beta_prime(const ModelParams& params, double s) {
  const double g = params.gamma();
  const double sigma2 = params.sigma() * params.sigma();
  const double sech = 1.0 / std::cosh(g * s);
  const double x = 2.0 * g * s;
  return g * g * sech * sech - (std::cosh(x) + params.eps() * std::sinh(x)) / (2.0 * sigma2);
}

namespace {

// ln psi0 for the unnormalized ground state.
double log_psi0(const ModelParams& params, double s) {
  const double g = params.gamma();
  const double eps = params.eps();
  const double x = 2.0 * g * s;
  // cosh x + eps sinh x as positive exponentials so the far tails never form inf - inf.
  const double mixed = 0.5 * ((1.0 + eps) * std::exp(x) + (1.0 - eps) * std::exp(-x));
  const double sigma2 = params.sigma() * params.sigma();
  return log_cosh(g * s) - (mixed + eps * x) / (8.0 * g * g * sigma2);
}

}  // namespace

double psi_unnormalized(const ModelParams& params, int index, double s) {
  if (index != 0 && index != 1) throw std::invalid_argument("mode index must be 0 or 1");
  const double psi0 = std::exp(log_psi0(params, s));
  return index == 0 ? psi0 : multiplier_alpha(params, s) * psi0;
}

Mode::Mode(const ModelParams& params, int index, double norm_constant)
    : params_(params), index_(index), norm_constant_(norm_constant) {
  if (index != 0 && index != 1) throw std::invalid_argument("mode index must be 0 or 1");
  if (!(norm_constant > 0.0)) throw std::invalid_argument("mode: norm constant must be > 0");
}

Eigen::VectorXd Mode::sample(const Grid& grid) const {
  Eigen::VectorXd out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = (*this)(grid[i]);
  return out;
}

Mode normalize(const ModelParams& params, int index, double tol) {
  const double cut = params.cutoff();
  const double norm2 = integrate(
      [&](double s) {
        const double v = psi_unnormalized(params, index, s);
        return v * v;
      },
      -cut, cut, tol);
  return Mode(params, index, 1.0 / std::sqrt(norm2));
}

int count_nodes(const Mode& mode, const Grid& grid) {
  return count_sign_changes(mode.sample(grid), 1e-14);
}

double schrodinger_residual(const Mode& mode, const std::function<double(double)>& potential,
                            double eigenvalue, const Grid& grid, double h) {
  const Eigen::VectorXd psi = mode.sample(grid);
  const double peak = psi.cwiseAbs().maxCoeff();
  const std::function<double(double)> f = [&mode](double s) { return mode(s); };
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.size(); ++i) {
    const double s = grid[i];
    const double value = psi[i];
    const double d2 = second_derivative(f, s, h);
    const double vpsi = value == 0.0 ? 0.0 : potential(s) * value;
    worst = std::max(worst, std::abs(-d2 + vpsi - eigenvalue * value));
  }
  return worst / peak;
}

double overlap(const Mode& a, const Mode& b, double tol) {
  const double cut = std::max(a.params().cutoff(), b.params().cutoff());
  return integrate([&](double s) { return a(s) * b(s); }, -cut, cut, tol);
}

}  // namespace dwt

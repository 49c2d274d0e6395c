#include "dwtunnel/potentials.hpp"

#include <cmath>
#include <sstream>

namespace dwt {

namespace {

std::string node_message(double s) {
  std::ostringstream os;
  os.precision(12);
  os << "potential reconstruction undefined at node s = " << s;
  return os.str();
}

void check_which(int which) {
  if (which != 0 && which != 1) throw std::invalid_argument("potential selector must be 0 or 1");
}

}  // namespace

NodeDomainError::NodeDomainError(double s) : std::domain_error(node_message(s)), s_(s) {}

double v_closed_form(const ModelParams& params, int which, double s) {
  check_which(which);
  if (!params.symmetric()) {
    throw std::invalid_argument("v_closed_form: closed form requires eps = 0 (use v_reconstructed)");
  }
  const double g = params.gamma();
  const double sigma2 = params.sigma() * params.sigma();
  const double sh = std::sinh(2.0 * g * s);
  const double sign = which == 0 ? 1.0 : -1.0;
  return g * g + sign / (2.0 * sigma2) - std::cosh(2.0 * g * s) / sigma2 +
         sh * sh / (16.0 * g * g * sigma2 * sigma2);
}

double v_closed_form_printed(const ModelParams& params, int which, double s) {
  check_which(which);
  const double g = params.gamma();
  const double gs2 = g * g * params.sigma() * params.sigma();
  const double sigma4 = std::pow(params.sigma(), 4);
  const double sign = which == 0 ? 1.0 : -1.0;
  return (16.0 * gs2 * (sign + 2.0 * (gs2 - std::cosh(2.0 * g * s))) + std::cosh(4.0 * g * s)) /
         (32.0 * g * g * sigma4);
}

double printed_constant_offset(const ModelParams& params) {
  return 1.0 / (32.0 * params.gamma() * params.gamma() * std::pow(params.sigma(), 4));
}

double v_reconstructed(const Mode& mode, double eigenvalue, double s) {
  if (!(std::abs(mode(s)) > 1e-12)) throw NodeDomainError(s);
  const ModelParams& p = mode.params();
  const double beta = log_derivative_beta(p, s);
  double ratio = log_derivative_beta_prime(p, s) + beta * beta;  // psi0''/psi0
  if (mode.index() == 1) {
    // (alpha psi0)'' / (alpha psi0) = psi0''/psi0 + (alpha'' + 2 alpha' beta) / alpha
    ratio += (multiplier_alpha_second(p, s) + 2.0 * multiplier_alpha_prime(p, s) * beta) /
             multiplier_alpha(p, s);
  }
  return ratio + eigenvalue;
}

double v_analytic(const ModelParams& params, int which, double s) {
  check_which(which);
  const double beta = log_derivative_beta(params, s);
  return log_derivative_beta_prime(params, s) + beta * beta - (which == 0 ? 0.0 : params.splitting());
}

double v_generic(double gamma, double eps_phen, double s) {
  if (!(gamma > 0.0)) throw std::invalid_argument("v_generic: gamma must be > 0");
  // gamma^2 split off so that eps_phen = 0 yields exactly gamma^2.
  const double e2 = eps_phen * eps_phen;
  const double sh = std::sinh(2.0 * gamma * s);
  return gamma * gamma + 0.5 * eps_phen * std::abs(eps_phen) - e2 * std::cosh(2.0 * gamma * s) +
         e2 * e2 * sh * sh / (16.0 * gamma * gamma);
}

PotentialSpec::PotentialSpec(const ModelParams& params, int which) : params_(params), which_(which) {
  check_which(which);
}

double PotentialSpec::operator()(double s) const {
  return params_.symmetric() ? v_closed_form(params_, which_, s) : v_analytic(params_, which_, s);
}

}  // namespace dwt

#include "dwtunnel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

namespace dwt {

namespace {

std::array<std::complex<double>, 2> superposition_weights(const ModelParams& params, Flavor flavor, double t) {
  const double w = 1.0 / std::numbers::sqrt2;
  const double phase = t / params.sigma();
  if (flavor == Flavor::stable) return {w, std::polar(w, -phase)};
  return {w * std::exp(-phase), w};
}

std::string resolution_message(double s, double p, double error) {
  std::ostringstream os;
  os.precision(8);
  os << "wigner: y-integral under-resolved at (s = " << s << ", p = " << p << "), error estimate " << error;
  return os.str();
}

// Half-width of the y-range where psi(s + y) psi(s - y) is not negligible.
double y_half_width(double cut, double s) { return cut - std::abs(s); }

// Panels for the initial split so each holds about one oscillation of e^{2ipy}.
int oscillation_panels(double half_width, double p) {
  const double period = std::numbers::pi / std::max(std::abs(p), 1.0);
  return 2 * std::max(1, static_cast<int>(std::ceil(half_width / period)));
}

using KernelVector = Eigen::Matrix<double, 8, 1>;

KernelVector kernel_cell(const Mode& psi0, const Mode& psi1, double cut, double s,
                         double p, double tol) {
  const double half = y_half_width(cut, s);
  if (half <= 0.0) return KernelVector::Zero();
  auto integrand = [&](double y) {
    const double a0 = psi0(s + y);
    const double a1 = psi1(s + y);
    const double b0 = psi0(s - y);
    const double b1 = psi1(s - y);
    const double c = std::cos(2.0 * p * y);
    const double sn = std::sin(2.0 * p * y);
    const double products[4] = {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
    KernelVector v;
    for (int k = 0; k < 4; ++k) {
      v[2 * k] = products[k] * c;
      v[2 * k + 1] = products[k] * sn;
    }
    return v;
  };
  const auto result = integrate_adaptive<KernelVector>(integrand, -half, half, tol * std::numbers::pi,
                                                       KernelVector::Zero(), oscillation_panels(half, p));
  if (!result.converged) throw WignerResolutionError(s, p, result.error / std::numbers::pi);
  return result.value / std::numbers::pi;
}

// Runs body(i) for i in [0, n) on up to hardware_concurrency workers; each
// index is written by exactly one worker so results do not depend on the split.
void parallel_rows(int n, const std::function<void(int)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string_view to_string(Flavor flavor) { return flavor == Flavor::stable ? "stable" : "unstable"; }

SuperpositionState::SuperpositionState(const ModelParams& params, Flavor flavor, double time)
    : params_(params),
      flavor_(flavor),
      time_(time),
      ground_(normalize(params, 0)),
      excited_(normalize(params, 1)),
      coefficients_(superposition_weights(params, flavor, time)) {
  if (!std::isfinite(time)) throw std::invalid_argument("state: time must be finite");
  if (flavor == Flavor::unstable && time < 0.0) {
    throw std::invalid_argument("state: unstable superposition requires t >= 0");
  }
}

SuperpositionState state(const ModelParams& params, Flavor flavor, double t) {
  return SuperpositionState(params, flavor, t);
}

double density(const SuperpositionState& state, double s) { return std::norm(state(s)); }

Eigen::VectorXd density(const SuperpositionState& state, const Grid& grid) {
  Eigen::VectorXd out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = density(state, grid[i]);
  return out;
}

double norm_squared(const SuperpositionState& state, double tol) {
  const double cut = state.params().cutoff();
  return integrate([&](double s) { return density(state, s); }, -cut, cut, tol);
}

double side_probability(const SuperpositionState& state, bool right, double tol) {
  const double cut = state.params().cutoff();
  auto rho = [&](double s) { return density(state, s); };
  return right ? integrate(rho, 0.0, cut, tol) : integrate(rho, -cut, 0.0, tol);
}

WignerResolutionError::WignerResolutionError(double s, double p, double error)
    : std::runtime_error(resolution_message(s, p, error)), s_(s), p_(p) {}

ModeWignerKernels::ModeWignerKernels(const ModelParams& params, const Grid& s_grid, const Grid& p_grid, double tol)
    : params_(params), s_grid_(s_grid), p_grid_(p_grid) {
  const Mode psi0 = normalize(params, 0);
  const Mode psi1 = normalize(params, 1);
  const double cut = params.cutoff();
  const int ns = s_grid.size();
  const int np = p_grid.size();
  for (auto& m : re_) m.resize(ns, np);
  for (auto& m : im_) m.resize(ns, np);
  parallel_rows(ns, [&](int i) {
    for (int j = 0; j < np; ++j) {
      const KernelVector k = kernel_cell(psi0, psi1, cut, s_grid[i], p_grid[j], tol);
      for (int pair = 0; pair < 4; ++pair) {
        re_[pair](i, j) = k[2 * pair];
        im_[pair](i, j) = k[2 * pair + 1];
      }
    }
  });
}

std::complex<double> wigner_cell(const SuperpositionState& state, double s, double p, double tol) {
  const double half = y_half_width(state.params().cutoff(), s);
  if (half <= 0.0) return {0.0, 0.0};
  auto integrand = [&](double y) {
    const std::complex<double> v = std::conj(state(s + y)) * state(s - y) * std::polar(1.0, 2.0 * p * y);
    return Eigen::Vector2d(v.real(), v.imag());
  };
  const auto result = integrate_adaptive<Eigen::Vector2d>(integrand, -half, half, tol * std::numbers::pi,
                                                          Eigen::Vector2d::Zero(), oscillation_panels(half, p));
  if (!result.converged) throw WignerResolutionError(s, p, result.error / std::numbers::pi);
  return {result.value[0] / std::numbers::pi, result.value[1] / std::numbers::pi};
}

WignerGrid wigner(const SuperpositionState& state, const ModeWignerKernels& kernels) {
  if (!(state.params() == kernels.params())) {
    throw std::invalid_argument("wigner: kernels were built for different model parameters");
  }
  const auto& c = state.coefficients();
  const int ns = kernels.s_grid().size();
  const int np = kernels.p_grid().size();
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(ns, np);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(ns, np);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> w = std::conj(c[i]) * c[j];
      re += w.real() * kernels.real(i, j) - w.imag() * kernels.imag(i, j);
      im += w.real() * kernels.imag(i, j) + w.imag() * kernels.real(i, j);
    }
  }
  const double peak = re.cwiseAbs().maxCoeff();
  const double residue = peak > 0.0 ? im.cwiseAbs().maxCoeff() / peak : im.cwiseAbs().maxCoeff();
  return WignerGrid{kernels.s_grid(), kernels.p_grid(), state.time(), std::move(re), residue};
}

WignerGrid wigner(const SuperpositionState& state, const Grid& s_grid, const Grid& p_grid) {
  return wigner(state, ModeWignerKernels(state.params(), s_grid, p_grid));
}

Eigen::MatrixXd wigner_modulus_rescaled(const WignerGrid& w) {
  const Eigen::MatrixXd modulus = w.values.cwiseAbs();
  const double peak = modulus.size() > 0 ? modulus.maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw std::domain_error("wigner_modulus_rescaled: grid is identically zero");
  return modulus / peak;
}

Eigen::VectorXd wigner_position_marginal(const WignerGrid& w) {
  return w.values.rowwise().sum() * w.p_grid.spacing();
}

double wigner_total(const WignerGrid& w) { return w.values.sum() * w.s_grid.spacing() * w.p_grid.spacing(); }

}  // namespace dwt

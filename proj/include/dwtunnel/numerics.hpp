// Quadrature, error function and finite differences shared by every module.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace dwt {

/// Maximum bisection depth of the adaptive integrator.
inline constexpr int kMaxSubdivisionDepth = 60;

/// Default finite-difference step in position units.
inline constexpr double kDefaultStep = 1e-3;

/// ln(1e-18): envelope drop used to truncate infinite domains.
inline constexpr double kEnvelopeLogDrop = 41.5;

/// Uniform sampling of a 1-dim coordinate. The point count is odd so a
/// symmetric grid always contains the origin.
class Grid {
 public:
  Grid(double min, double max, int n_points);

  static Grid symmetric(double half_width, int n_points) { return Grid(-half_width, half_width, n_points); }

  double min() const { return min_; }
  double max() const { return max_; }
  int size() const { return n_; }
  double spacing() const { return (max_ - min_) / (n_ - 1); }
  double operator[](int i) const { return i == n_ - 1 ? max_ : min_ + i * spacing(); }

  /// Index of the sample closest to `x` (clamped to the grid).
  int nearest_index(double x) const;

  Eigen::VectorXd points() const;

 private:
  double min_;
  double max_;
  int n_;
};

/// Thrown by `integrate` when the subdivision budget is exhausted.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double estimate, double error_bound);

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

template <typename Value>
struct QuadratureResult {
  Value value;
  double error;
  bool converged;
};

namespace detail {

// 15-point Kronrod nodes (positive half) and weights with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double max_abs(double v) { return std::abs(v); }

template <typename Derived>
double max_abs(const Eigen::DenseBase<Derived>& v) {
  return v.derived().array().abs().maxCoeff();
}

template <typename Value>
Value zero_like(const Value& v) {
  if constexpr (std::is_arithmetic_v<Value>) {
    return Value{0};
  } else {
    return Value::Zero(v.rows(), v.cols());
  }
}

template <typename Value, typename F>
void gauss_kronrod_15(F& f, double a, double b, Value& kronrod, Value& gauss) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Value fc = f(center);
  kronrod = fc * kKronrodWeights[7];
  gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Value f1 = f(center - dx);
    const Value f2 = f(center + dx);
    kronrod += (f1 + f2) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
}

template <typename Value, typename F>
void adaptive_segment(F& f, double a, double b, double tol_density, int depth, int max_depth,
                      QuadratureResult<Value>& acc) {
  Value kronrod = zero_like(acc.value);
  Value gauss = zero_like(acc.value);
  gauss_kronrod_15(f, a, b, kronrod, gauss);
  const double err = max_abs(Value(kronrod - gauss));
  const double local_tol = tol_density * (b - a);
  const double noise_floor = 50.0 * std::numeric_limits<double>::epsilon() * max_abs(kronrod);
  if (err <= local_tol || err <= noise_floor || depth >= max_depth) {
    if (err > local_tol && err > noise_floor) acc.converged = false;
    acc.value += kronrod;
    acc.error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_segment(f, a, mid, tol_density, depth + 1, max_depth, acc);
  adaptive_segment(f, mid, b, tol_density, depth + 1, max_depth, acc);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature with interval halving.
///
/// `Value` may be `double` or any fixed-size Eigen array/vector, which lets
/// several integrals sharing one integrand evaluation be computed in one
/// pass; the error estimate is then the max-norm over components. The
/// absolute tolerance is distributed over sub-intervals proportionally to
/// their width. `initial_panels` pre-splits [a, b] before adapting, which
/// helps for oscillatory integrands.
template <typename Value, typename F>
QuadratureResult<Value> integrate_adaptive(F&& f, double a, double b, double tol,
                                           const Value& zero, int initial_panels = 1,
                                           int max_depth = kMaxSubdivisionDepth) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  QuadratureResult<Value> acc{zero, 0.0, true};
  if (a == b) return acc;
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double tol_density = tol / (hi - lo);
  const int panels = std::max(1, initial_panels);
  const double width = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double pa = lo + k * width;
    const double pb = k == panels - 1 ? hi : lo + (k + 1) * width;
    detail::adaptive_segment(f, pa, pb, tol_density, 0, max_depth, acc);
  }
  acc.value *= sign;
  return acc;
}

/// Integrates a real function over [a, b] to absolute tolerance `tol`.
/// Throws QuadratureError (carrying the best estimate) if the budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// Error function; odd by construction.
double erf(double x);

/// Five-point central second derivative, O(h^4).
double second_derivative(const std::function<double(double)>& f, double s, double h = kDefaultStep);

/// Five-point central first derivative, O(h^4).
double first_derivative(const std::function<double(double)>& f, double s, double h = kDefaultStep);

/// Half-width beyond which the ground-state envelope
/// cosh^2(gs) exp(-[cosh 2gs + eps(2gs + sinh 2gs)] / (4 g^2 sigma^2))
/// has dropped by more than exp(-log_drop) (default ~1e-18) relative to its
/// value at the origin, on both sides.
double envelope_cutoff(double gamma, double sigma, double eps = 0.0, double log_drop = kEnvelopeLogDrop);

/// Numerically stable ln(cosh x).
inline double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

/// Indices of strict interior local minima of a sampled curve.
std::vector<int> local_minima(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Number of sign changes, ignoring samples with |v| < threshold.
int count_sign_changes(const Eigen::Ref<const Eigen::VectorXd>& values, double threshold);

}  // namespace dwt

// Acceptance run: one PASS/FAIL line per criterion with the worst measured
// value against its tolerance and the wall time.
//
// Exit status counts the failures that are not listed in kUnattainable. Those
// criteria are still evaluated and printed as FAIL, and a listed criterion only
// counts as explained when every failing sub-check carries the listed name.
#include "dwtunnel/cli.hpp"
#include "dwtunnel/defects.hpp"
#include "dwtunnel/dynamics.hpp"
#include "dwtunnel/potentials.hpp"
#include "dwtunnel/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

using namespace dwt;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent high-precision values (arbitrary-precision quadrature / Bessel).
constexpr double kBesselNorm = 2.64426636284450722710;
constexpr double kKinkGamma2[] = {3.43584235774641005961, 7.03464202242760064255, 14.1519632437240106616,
                                  28.3454176989153114078};

// At t = 10 sigma the unstable density still carries e^{-10} psi0 psi1, about
// 1.9e-5 for gamma = sigma = 1, so a 1e-6 bound cannot hold for exact modes.
struct Unattainable {
  const char* sub_check;
  const char* reason;
};

const std::map<int, Unattainable> kUnattainable = {
    {7, {"collapse t=10s", "residual at t=10*sigma is e^-10*psi0*psi1, 2e-5..3e-5 for exact modes"}},
    {10, {"tachyonic_collapse", "inherits the t=10*sigma collapse bound of criterion 7"}},
};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::set<std::string> failed;
};

// Tracks the worst ratio measured/limit over many sub-checks.
class Tally {
 public:
  void at_most(const std::string& what, double measured, double limit) {
    const bool ok = std::isfinite(measured) && measured <= limit;
    if (!ok) {
      pass_ = false;
      failed_names_.insert(what);
    }
    double ratio = limit > 0.0 ? measured / limit : (measured == 0.0 ? 0.0 : INFINITY);
    if (!std::isfinite(measured)) ratio = INFINITY;
    if (ratio > worst_ratio_) {
      worst_ratio_ = ratio;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s=%.3g (limit %.3g)", what.c_str(), measured, limit);
      worst_ = buf;
    }
  }
  void require(const std::string& what, bool ok) {
    if (!ok && pass_) failed_ = what;
    if (!ok) {
      pass_ = false;
      failed_names_.insert(what);
    }
  }
  Outcome outcome() const {
    return {pass_, failed_.empty() ? "worst " + worst_ : "failed: " + failed_, failed_names_};
  }

 private:
  bool pass_ = true;
  double worst_ratio_ = -1.0;
  std::string worst_ = "-";
  std::string failed_;
  std::set<std::string> failed_names_;
};

std::vector<ModelParams> sweep(bool with_asym) {
  std::vector<ModelParams> out;
  for (double g : kSweepGammas)
    for (double s : kSweepSigmas)
      for (double e : kSweepEps)
        if (with_asym || e == 0.0) out.emplace_back(g, s, e);
  return out;
}

Outcome residuals() {
  Tally t;
  for (const auto& p : sweep(true)) {
    const Mode m0 = normalize(p, 0);
    const Mode m1 = normalize(p, 1);
    const PotentialSpec v0(p, 0), v1(p, 1);
    const Grid g = Grid::symmetric(p.cutoff(), 2001);
    t.at_most("res(psi0,V0)", schrodinger_residual(m0, v0, 0.0, g), 1e-6);
    t.at_most("res(psi1,V0)", schrodinger_residual(m1, v0, p.splitting(), g), 1e-6);
    t.at_most("res(psi1,V1)", schrodinger_residual(m1, v1, 0.0, g), 1e-6);
  }
  return t.outcome();
}

Outcome orthogonality() {
  Tally t;
  for (const auto& p : sweep(true)) t.at_most("|<0|1>|", std::abs(overlap(normalize(p, 0), normalize(p, 1))), 1e-8);
  return t.outcome();
}

Outcome potential_identities() {
  Tally t;
  for (const auto& p : sweep(true)) {
    const PotentialSpec v0(p, 0), v1(p, 1);
    // on the truncation window; far outside it V ~ 1e19 and 1e-12 is below double resolution
    const Grid g = Grid::symmetric(p.cutoff(), 801);
    for (double s : g.points()) t.at_most("V0-V1-1/s^2", std::abs(v0(s) - v1(s) - p.splitting()), 1e-12);
  }
  for (const auto& p : sweep(false)) {
    const Mode m0 = normalize(p, 0), m1 = normalize(p, 1);
    for (double s = -4.0; s <= 4.0; s += 0.01) {
      if (std::abs(m1(s)) <= 1e-12 || std::abs(m0(s)) <= 1e-12) continue;
      t.at_most("recon0", std::abs(v_reconstructed(m0, 0.0, s) - v_closed_form(p, 0, s)), 1e-10);
      t.at_most("recon1", std::abs(v_reconstructed(m1, 0.0, s) - v_closed_form(p, 1, s)), 1e-10);
    }
    t.require("v_generic(g,0,s)==g^2", v_generic(p.gamma(), 0.0, 1.7) == p.gamma() * p.gamma());
    const double offset = v_closed_form_printed(p, 0, 0.3) - v_closed_form(p, 0, 0.3);
    const double expected = 1.0 / (32.0 * std::pow(p.gamma(), 2) * std::pow(p.sigma(), 4));
    t.at_most("printed offset", std::abs(offset - expected), 1e-12);
  }
  return t.outcome();
}

Outcome norm_oracle() {
  Tally t;
  const ModelParams p;
  const double cut = p.cutoff();
  const double n = integrate(
      [&](double s) {
        const double v = psi_unnormalized(p, 0, s);
        return v * v;
      },
      -cut, cut, 1e-13);
  t.at_most("|N-oracle|", std::abs(n - kBesselNorm), 1e-8);
  return t.outcome();
}

Outcome deformation_chain() {
  Tally t;
  for (const auto& p : sweep(false)) {
    for (int k = 0; k < 200; ++k) {
      const double s = -3.0 + 6.0 * k / 199.0;
      const auto d = superpotential_derivs(p, phi_kink(s));
      const double xi_prime = first_derivative([&](double x) { return field_of_phi(p, DefectKind::kink, phi_kink(x)); }, s, 1e-3);
      const double chi_prime = first_derivative([&](double x) { return field_of_phi(p, DefectKind::lump, phi_kink(x)); }, s, 1e-3);
      t.at_most("xi'-z", std::abs(xi_prime - d.z_xi), 1e-8);
      t.at_most("chi'-w", std::abs(chi_prime - d.w_chi), 1e-8);
    }
    // ratio of the modes to the profile derivatives, over |psi0| > 1e-8 of peak
    const Grid g = Grid::symmetric(p.cutoff(), 801);
    double peak = 0.0;
    for (int i = 0; i < g.size(); ++i) peak = std::max(peak, psi_unnormalized(p, 0, g[i]));
    double lo0 = INFINITY, hi0 = -INFINITY, lo1 = INFINITY, hi1 = -INFINITY;
    for (int i = 0; i < g.size(); ++i) {
      const double s = g[i];
      const double z0 = psi_unnormalized(p, 0, s);
      if (z0 <= 1e-8 * peak) continue;
      const auto d = superpotential_derivs(p, phi_kink(s));
      lo0 = std::min(lo0, z0 / d.z_xi);
      hi0 = std::max(hi0, z0 / d.z_xi);
      const double z1 = psi_unnormalized(p, 1, s);
      if (std::abs(z1) <= 1e-8 * peak) continue;
      lo1 = std::min(lo1, z1 / d.w_chi);
      hi1 = std::max(hi1, z1 / d.w_chi);
    }
    t.at_most("spread psi0/xi'", (hi0 - lo0) / std::abs(hi0), 1e-8);
    t.at_most("spread psi1/chi'", (hi1 - lo1) / std::abs(hi1), 1e-8);
    const Grid pg = profile_grid(p, 2001);
    for (DefectKind kind : {DefectKind::kink, DefectKind::lump}) {
      const auto prof = profile_numeric(p, kind, pg);
      for (int i = 0; i < pg.size(); ++i)
        t.at_most("profile-erf", std::abs(prof.values()[i] - field_of_phi(p, kind, phi_kink(pg[i]))), 1e-7);
    }
  }
  return t.outcome();
}

Outcome charges() {
  Tally t;
  const ModelParams unit;
  const double q = profile_numeric(unit, DefectKind::kink, profile_grid(unit, 4001)).charge();
  t.at_most("Q_kink(1,1)", std::abs(q - 2.0 * std::sqrt(kPi) * std::exp(-0.125)), 1e-6);
  for (const auto& p : sweep(false)) {
    t.at_most("|Q_lump|", std::abs(profile_numeric(p, DefectKind::lump, profile_grid(p, 4001)).charge()), 1e-8);
  }
  for (int k = 0; k < 4; ++k) {
    const ModelParams p(2.0, kSweepSigmas[k]);
    const double qk = profile_numeric(p, DefectKind::kink, profile_grid(p, 4001)).charge();
    t.at_most("Q_kink(2,s)", std::abs(qk - kKinkGamma2[k]), 1e-6);
  }
  return t.outcome();
}

Outcome dynamics() {
  Tally t;
  for (const auto& p : sweep(true)) {
    const double sg = p.sigma();
    for (double frac : {0.0, 0.125, 0.25, 0.5, 1.0, 2.0}) {
      const double tm = frac * kPi * sg;
      t.at_most("stable norm", std::abs(norm_squared(state(p, Flavor::stable, tm)) - 1.0), 1e-10);
      t.at_most("unstable norm^2",
                std::abs(norm_squared(state(p, Flavor::unstable, tm)) - 0.5 * (std::exp(-2.0 * tm / sg) + 1.0)), 1e-8);
    }
    const Grid g = Grid::symmetric(p.cutoff(), 801);
    if (p.symmetric()) {
      const auto a = state(p, Flavor::stable, 0.0);
      const auto b = state(p, Flavor::stable, kPi * sg);
      for (int i = 0; i < g.size(); ++i) t.at_most("reflection", std::abs(density(b, g[i]) - density(a, -g[i])), 1e-8);
    }
    const auto late = state(p, Flavor::unstable, 10.0 * sg);
    for (int i = 0; i < g.size(); ++i) {
      const double v = late.excited()(g[i]);
      t.at_most("collapse t=10s", std::abs(density(late, g[i]) - 0.5 * v * v), 1e-6);
    }
  }
  return t.outcome();
}

Outcome wigner_suite() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  const ModelParams p;
  const ModeWignerKernels kernels(p, Grid(-8.0, 8.0, 801), Grid(-8.0, 8.0, 201));
  for (Flavor f : {Flavor::stable, Flavor::unstable}) {
    for (double tm : default_times()) {
      const auto st = state(p, f, tm);
      const WignerGrid w = wigner(st, kernels);
      t.at_most("imag residue", w.imag_residue, 1e-10);
      t.at_most("marginal", (wigner_position_marginal(w) - density(st, w.s_grid)).cwiseAbs().maxCoeff(), 1e-4);
      t.at_most("total", std::abs(wigner_total(w) - norm_squared(st)), 1e-4);
    }
  }
  const WignerGrid w0 = wigner(state(p, Flavor::stable, 0.0), kernels);
  const WignerGrid wpi = wigner(state(p, Flavor::stable, kPi), kernels);
  t.at_most("(s,p)->(-s,-p)", (w0.values - wpi.values.reverse()).cwiseAbs().maxCoeff(), 1e-6);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.at_most("seconds", secs, 60.0);
  return t.outcome();
}

Outcome figures() {
  Tally t;
  for (const auto& p : sweep(false)) {
    RunConfig config;
    config.gamma = p.gamma();
    config.sigma = p.sigma();
    const Table eig = cmd_eigen(config);
    const Eigen::VectorXd& s = eig.numeric("s");
    const auto m = local_minima(eig.numeric("V0"));
    t.require("V0 has two minima", m.size() == 2);
    if (m.size() == 2) {
      const double expected = std::acosh(8.0 * std::pow(p.gamma() * p.sigma(), 2)) / (2.0 * p.gamma());
      const double step = s[1] - s[0];
      t.at_most("min location/step", std::max(std::abs(s[m[0]] + expected), std::abs(s[m[1]] - expected)) / step, 1.0);
    }
  }
  RunConfig asym;
  asym.eps = 0.75;
  const Table eig = cmd_eigen(asym);
  const auto m = local_minima(eig.numeric("V0"));
  t.require("asymmetric V0 has two minima", m.size() == 2);
  if (m.size() == 2) t.require("unequal depths", std::abs(eig.numeric("V0")[m[0]] - eig.numeric("V0")[m[1]]) > 1e-3);

  for (double e : {0.0, 0.75}) {
    RunConfig config;
    config.eps = e;
    const DefectTables d = cmd_defects(config);
    const Eigen::VectorXd& xi = d.profiles.numeric("xi");
    const Eigen::VectorXd& chi = d.profiles.numeric("chi");
    bool monotone = true;
    for (Eigen::Index i = 1; i < xi.size(); ++i) monotone = monotone && xi[i] >= xi[i - 1];
    t.require("kink monotone", monotone);
    // one interior extremum: the increments change sign exactly once
    Eigen::VectorXd steps = chi.tail(chi.size() - 1) - chi.head(chi.size() - 1);
    t.require("lump single extremum", count_sign_changes(steps, 1e-14) == 1);
  }

  RunConfig evo;
  evo.times = default_times();
  const Table ev = cmd_evolve(evo);
  t.require("evolve columns", ev.headers().size() == 1 + 2 * default_times().size());

  RunConfig wig;
  wig.grid = {-8.0, 8.0, 161};
  wig.p_grid = {-8.0, 8.0, 41};
  wig.times = default_times();
  for (const auto& w : cmd_wigner(wig)) t.require("W_rescaled max = 1", w.table.numeric("W_rescaled").maxCoeff() == 1.0);
  return t.outcome();
}

Outcome validate_suite() {
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport report = run_validation();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = report.all_passed() && secs < 60.0;
  for (const auto& c : report.checks())
    if (!c.pass) o.failed.insert(c.name);
  if (!(secs < 60.0)) o.failed.insert("runtime");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d of %zu checks failed, %.1fs (limit 60s)", report.failures(), report.checks().size(),
                secs);
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"eigenmode residuals", residuals},
      {"orthogonality", orthogonality},
      {"potential identities", potential_identities},
      {"norm oracle", norm_oracle},
      {"deformation chain", deformation_chain},
      {"topological charges", charges},
      {"dynamics", dynamics},
      {"wigner", wigner_suite},
      {"figure tables", figures},
      {"validate", validate_suite},
  };
  int unexpected = 0;
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%2d] %-4s %-22s %7.2fs  %s\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first, secs,
                o.detail.c_str());
    if (!o.pass) {
      ++failed;
      auto it = kUnattainable.find(id);
      std::set<std::string> expected;
      if (it != kUnattainable.end()) expected = {it->second.sub_check};
      if (o.failed == expected) {
        std::printf("           known unattainable: %s\n", it->second.reason);
      } else {
        ++unexpected;
      }
    }
  }
  std::printf("%zu criteria, %d failed, %d unexpected\n", criteria.size(), failed, unexpected);
  return unexpected == 0 ? 0 : 1;
}

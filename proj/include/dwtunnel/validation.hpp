// Invariant-verification suite run by `dwtunnel validate`.
#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace dwt {

inline constexpr std::array<double, 2> kSweepGammas = {1.0, 2.0};
inline constexpr std::array<double, 4> kSweepSigmas = {1.0, 2.0, 4.0, 8.0};
inline constexpr std::array<double, 2> kSweepEps = {0.0, 0.75};

struct Check {
  std::string name;
  std::string params;
  double measured;
  double threshold;
  bool pass;
  /// Diagnostics are reported but never fail the run.
  bool informational = false;
};

struct ValidationOptions {
  /// Negative control: replaces the orthogonality thresholds by -1.
  bool corrupt_tolerance = false;
  /// Include the Wigner grids (the slowest part).
  bool include_wigner = true;
};

class ValidationReport {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }

  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const;
  int failures() const;

  /// One row per check: name, parameters, measured, threshold, status.
  void write_text(std::ostream& os) const;

  /// {"checks": n, "failures": k, "passed": bool, "failed": [names...]}
  void write_summary_json(std::ostream& os) const;

 private:
  std::vector<Check> checks_;
};

ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace dwt

// Command-line surface: figure-data emitters and the validation runner.
#pragma once

#include "dwtunnel/dynamics.hpp"
#include "dwtunnel/table.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dwt {

enum ExitCode : int { kExitOk = 0, kExitValidationFailed = 1, kExitBadInput = 2, kExitNumerical = 3 };

struct GridSpec {
  double min;
  double max;
  int n;
};

struct RunConfig {
  double gamma = 1.0;
  double sigma = 1.0;
  double eps = 0.0;
  GridSpec grid{-8.0, 8.0, 801};
  GridSpec p_grid{-8.0, 8.0, 201};
  std::vector<double> times;
  /// "-" writes to the output stream; otherwise a file (single table) or a
  /// file prefix (several tables).
  std::string output_path = "-";
  TableFormat format = TableFormat::csv;
  bool corrupt_tolerance = false;
};

/// {0, pi/8, pi/4, pi/2, pi}
std::vector<double> default_times();

/// "min:max:n"
GridSpec parse_grid_spec(const std::string& text);

/// Comma-separated times; each entry is a number or [k*]pi[/m].
std::vector<double> parse_times(const std::string& text);

/// Columns s, psi0, psi1, V0, V1.
Table cmd_eigen(const RunConfig& config);

struct DefectTables {
  Table profiles;  // s, xi, chi
  Table curves;    // phi, field, potential, kind
  double q_kink;
  double q_lump;
};

DefectTables cmd_defects(const RunConfig& config);

/// Column s then one density column per (flavor, time).
Table cmd_evolve(const RunConfig& config);

struct WignerTable {
  Flavor flavor;
  double time;
  Table table;  // s, p, W, W_rescaled (s outer, p inner)
};

std::vector<WignerTable> cmd_wigner(const RunConfig& config);

/// Parses argv, dispatches the subcommand and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwt

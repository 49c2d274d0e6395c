#include "dwtunnel/cli.hpp"

#include "dwtunnel/defects.hpp"
#include "dwtunnel/potentials.hpp"
#include "dwtunnel/validation.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

namespace dwt {

namespace {

constexpr const char* kOutDirVariable = "DWTUNNEL_OUT_DIR";

ModelParams model_of(const RunConfig& c) { return ModelParams(c.gamma, c.sigma, c.eps); }

Grid grid_of(const GridSpec& g) { return Grid(g.min, g.max, g.n); }

double parse_number(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("not a number: " + text);
  return v;
}

std::string extension(TableFormat f) { return f == TableFormat::csv ? ".csv" : ".json"; }

void write_file(const std::string& path, const Table& table, TableFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  write_table(os, table, format);
}

// Single-table commands: "-" -> stream, otherwise the path itself.
void emit_single(const RunConfig& c, const Table& table, std::ostream& out) {
  if (c.output_path == "-") {
    write_table(out, table, c.format);
  } else {
    write_file(c.output_path, table, c.format);
  }
}

// Multi-table commands: "-" -> stream with "# name" section lines,
// otherwise <prefix>_<name><ext>.
void emit_named(const RunConfig& c, const Table& table, std::ostream& out) {
  if (c.output_path == "-") {
    out << "# " << table.name() << '\n';
    write_table(out, table, c.format);
  } else {
    write_file(c.output_path + "_" + table.name() + extension(c.format), table, c.format);
  }
}

std::string time_label(double t) { return format_number(t); }

}  // namespace

std::vector<double> default_times() {
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 8.0, pi / 4.0, pi / 2.0, pi};
}

GridSpec parse_grid_spec(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw std::invalid_argument("grid must be min:max:n, got '" + text + "'");
  GridSpec g{};
  g.min = parse_number(text.substr(0, first));
  g.max = parse_number(text.substr(first + 1, second - first - 1));
  const double n = parse_number(text.substr(second + 1));
  if (n != std::floor(n)) throw std::invalid_argument("grid point count must be an integer");
  g.n = static_cast<int>(n);
  Grid(g.min, g.max, g.n);  // validates
  return g;
}

std::vector<double> parse_times(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::smatch m;
    double t = 0.0;
    if (std::regex_match(item, m, pi_form)) {
      const double k = m[1].length() ? parse_number(m[1].str()) : 1.0;
      const double d = m[2].matched ? parse_number(m[2].str()) : 1.0;
      t = k * std::numbers::pi / d;
    } else {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) throw std::invalid_argument("empty time entry");
      t = parse_number(item.substr(b, e - b + 1));
    }
    if (!std::isfinite(t)) throw std::invalid_argument("times must be finite");
    out.push_back(t);
  }
  if (out.empty()) throw std::invalid_argument("times list is empty");
  return out;
}

Table cmd_eigen(const RunConfig& config) {
  const ModelParams p = model_of(config);
  const Grid grid = grid_of(config.grid);
  const Mode m0 = normalize(p, 0);
  const Mode m1 = normalize(p, 1);
  const PotentialSpec v0(p, 0);
  const PotentialSpec v1(p, 1);
  Eigen::VectorXd s = grid.points();
  Eigen::VectorXd pot0(grid.size());
  Eigen::VectorXd pot1(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    pot0[i] = v0(grid[i]);
    pot1[i] = v1(grid[i]);
  }
  Table t("eigen");
  t.add("s", s).add("psi0", m0.sample(grid)).add("psi1", m1.sample(grid)).add("V0", pot0).add("V1", pot1);
  return t;
}

DefectTables cmd_defects(const RunConfig& config) {
  const ModelParams p = model_of(config);
  const Grid grid = grid_of(config.grid);
  const DefectProfile xi = profile_numeric(p, DefectKind::kink, grid);
  const DefectProfile chi = profile_numeric(p, DefectKind::lump, grid);

  DefectTables out{Table("profiles"), Table("curves"), xi.charge(), chi.charge()};
  out.profiles.add("s", grid.points()).add("xi", xi.values()).add("chi", chi.values());

  Eigen::VectorXd phi;
  Eigen::VectorXd field;
  Eigen::VectorXd potential;
  std::vector<std::string> kinds;
  if (has_closed_forms(p)) {
    const ParametricCurve u = parametric_potential(p, DefectKind::kink, grid.size());
    const ParametricCurve w = parametric_potential(p, DefectKind::lump, grid.size());
    const Eigen::Index n = u.phi.size();
    phi.resize(2 * n);
    field.resize(2 * n);
    potential.resize(2 * n);
    phi << u.phi, w.phi;
    field << u.field, w.field;
    potential << u.potential, w.potential;
    kinds.assign(n, "kink");
    kinds.insert(kinds.end(), n, "lump");
  }
  out.curves.add("phi", phi).add("field", field).add("potential", potential).add("kind", kinds);
  return out;
}

Table cmd_evolve(const RunConfig& config) {
  const ModelParams p = model_of(config);
  const Grid grid = grid_of(config.grid);
  if (config.times.empty()) throw std::invalid_argument("evolve needs at least one time");
  Table t("evolve");
  t.add("s", grid.points());
  for (Flavor flavor : {Flavor::stable, Flavor::unstable}) {
    for (double time : config.times) {
      t.add(std::string(to_string(flavor)) + "_t=" + time_label(time), density(state(p, flavor, time), grid));
    }
  }
  return t;
}

std::vector<WignerTable> cmd_wigner(const RunConfig& config) {
  const ModelParams p = model_of(config);
  const ModeWignerKernels kernels(p, grid_of(config.grid), grid_of(config.p_grid));
  const int ns = kernels.s_grid().size();
  const int np = kernels.p_grid().size();
  Eigen::VectorXd s_col(ns * np);
  Eigen::VectorXd p_col(ns * np);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < np; ++j) {
      s_col[i * np + j] = kernels.s_grid()[i];
      p_col[i * np + j] = kernels.p_grid()[j];
    }
  }
  std::vector<WignerTable> out;
  for (Flavor flavor : {Flavor::stable, Flavor::unstable}) {
    for (std::size_t k = 0; k < config.times.size(); ++k) {
      const double time = config.times[k];
      const WignerGrid w = wigner(state(p, flavor, time), kernels);
      if (!(w.imag_residue < kWignerImagLimit)) {
        throw std::runtime_error("wigner: imaginary residue " + format_number(w.imag_residue) + " exceeds limit");
      }
      const Eigen::MatrixXd rescaled = wigner_modulus_rescaled(w);
      Eigen::VectorXd w_col(ns * np);
      Eigen::VectorXd r_col(ns * np);
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < np; ++j) {
          w_col[i * np + j] = w.values(i, j);
          r_col[i * np + j] = rescaled(i, j);
        }
      }
      Table t(std::string(to_string(flavor)) + "_t" + std::to_string(k));
      t.add("s", s_col).add("p", p_col).add("W", w_col).add("W_rescaled", r_col);
      out.push_back({flavor, time, std::move(t)});
    }
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double-well tunneling from deformed topological defects"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig config;
  config.times = default_times();
  std::string grid_text = "-8:8:801";
  std::string pgrid_text = "-8:8:201";
  std::string times_text;
  std::string out_text;
  std::string format_text = "csv";

  app.add_option("--gamma", config.gamma, "inverse length scale gamma > 0")->capture_default_str();
  app.add_option("--sigma", config.sigma, "splitting scale sigma > 0 (omega1 = 1/sigma)")->capture_default_str();
  app.add_option("--eps", config.eps, "asymmetry, |eps| < 1")->capture_default_str();
  app.add_option("--grid", grid_text, "position grid min:max:n (n odd)")->capture_default_str();
  app.add_option("--pgrid", pgrid_text, "momentum grid min:max:n (n odd)")->capture_default_str();
  app.add_option("--times", times_text, "comma-separated times, e.g. 0,pi/8,pi");
  app.add_option("--out", out_text, "output file (or prefix); '-' for stdout");
  app.add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--corrupt-tolerance", config.corrupt_tolerance)->group("");  // negative-control hook

  auto* eigen_cmd = app.add_subcommand("eigen", "normalized modes and potentials");
  auto* defects_cmd = app.add_subcommand("defects", "kink/lump profiles, BPS curves, charges");
  auto* evolve_cmd = app.add_subcommand("evolve", "stable and unstable probability densities");
  auto* wigner_cmd = app.add_subcommand("wigner", "Wigner distributions per flavor and time");
  auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");
  for (auto* sub : {eigen_cmd, defects_cmd, evolve_cmd, wigner_cmd, validate_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    config.grid = parse_grid_spec(grid_text);
    config.p_grid = parse_grid_spec(pgrid_text);
    if (!times_text.empty()) config.times = parse_times(times_text);
    config.format = format_text == "json" ? TableFormat::json : TableFormat::csv;
    model_of(config);  // validates
    if (!out_text.empty()) {
      config.output_path = out_text;
    } else if (const char* dir = std::getenv(kOutDirVariable); dir && *dir) {
      const CLI::App* sub = app.get_subcommands().front();
      config.output_path = (std::filesystem::path(dir) / sub->get_name()).string();
      if (sub == eigen_cmd || sub == evolve_cmd) config.output_path += extension(config.format);
    }
    if (validate_cmd->parsed()) config.times = default_times();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (eigen_cmd->parsed()) {
      emit_single(config, cmd_eigen(config), out);
    } else if (defects_cmd->parsed()) {
      const DefectTables t = cmd_defects(config);
      emit_named(config, t.profiles, out);
      emit_named(config, t.curves, out);
      out << "# Q_kink=" << format_number(t.q_kink) << " Q_lump=" << format_number(t.q_lump) << '\n';
    } else if (evolve_cmd->parsed()) {
      emit_single(config, cmd_evolve(config), out);
    } else if (wigner_cmd->parsed()) {
      for (const WignerTable& w : cmd_wigner(config)) emit_named(config, w.table, out);
    } else if (validate_cmd->parsed()) {
      ValidationOptions options;
      options.corrupt_tolerance = config.corrupt_tolerance;
      const ValidationReport report = run_validation(options);
      report.write_text(out);
      report.write_summary_json(out);
      return report.all_passed() ? kExitOk : kExitValidationFailed;
    }
  } catch (const GridTooNarrowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const WignerResolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace dwt

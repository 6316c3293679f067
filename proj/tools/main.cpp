// Command-line front end: computes measure functionals, orthogonal norms,
// free energies, expansion coefficients, and residual sweeps for the built-in
// background measures, emitting JSON or CSV with 17-significant-digit
// numbers.  `verify` runs the built-in verification suite.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "coulombgas/expansion.hpp"
#include "coulombgas/free_energy.hpp"
#include "coulombgas/measure.hpp"
#include "coulombgas/norms.hpp"
#include "coulombgas/verify.hpp"

namespace {

using coulombgas::norms::Kind;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

// RFC-4180 style: wrap fields holding separators or quotes.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

// Minimal ordered JSON object writer; all our payloads are flat or one level
// of nesting, and hand-formatting keeps the 17-digit contract explicit.
class JsonObject {
 public:
  JsonObject& field(const std::string& key, double v) {
    return raw(key, num(v));
  }
  JsonObject& field(const std::string& key, int v) {
    return raw(key, std::to_string(v));
  }
  JsonObject& field(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
  }
  JsonObject& field(const std::string& key, const std::string& v) {
    return raw(key, quoted(v));
  }
  JsonObject& raw(const std::string& key, const std::string& v) {
    if (!body_.empty()) body_ += ",";
    body_ += quoted(key) + ":" + v;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

struct CommonArgs {
  std::string measure_spec = "spherical";
  double alpha = 0.0;
  double c = 0.0;
  std::string kind = "det";
  std::string format = "json";
  int threads = 0;
};

void add_charge_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--alpha", args.alpha, "point charge at infinity (>= 0)");
  cmd->add_option("--c", args.c, "point charge at the origin (>= 0)");
  cmd->add_option("--kind", args.kind, "ensemble kind: det | pfaff");
}

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--measure", args.measure_spec,
                  "spherical | scaled:a=<v> | mixture:theta=<v>,a=<v>");
  cmd->add_option("--format", args.format, "output format: json | csv");
  cmd->add_option("--threads", args.threads,
                  "worker threads (0 = runtime default / OMP_NUM_THREADS)");
}

Kind parse_kind(const std::string& kind) {
  if (kind == "det") return Kind::Determinantal;
  if (kind == "pfaff") return Kind::Pfaffian;
  throw std::invalid_argument("--kind must be det or pfaff");
}

void validate_common(const CommonArgs& args) {
  if (args.alpha < 0.0 || args.c < 0.0)
    throw std::invalid_argument("point charges must be nonnegative");
  if (args.format != "json" && args.format != "csv")
    throw std::invalid_argument("--format must be json or csv");
#ifdef _OPENMP
  if (args.threads > 0) omp_set_num_threads(args.threads);
#endif
}

int run_functionals(const CommonArgs& args) {
  const auto m = coulombgas::measure::parse_measure(args.measure_spec);
  const auto f = coulombgas::measure::functionals(m);
  if (args.format == "csv") {
    std::cout << "I,E,U0,rho0,rho_tilde0,curvature_integral\n"
              << num(f.energy) << "," << num(f.entropy) << "," << num(f.u_zero)
              << "," << num(f.rho0) << "," << num(f.rho_tilde0) << ","
              << num(f.curvature_integral) << "\n";
    return 0;
  }
  JsonObject out;
  out.field("measure", m.label())
      .field("I", f.energy)
      .field("E", f.entropy)
      .field("U0", f.u_zero)
      .field("rho0", f.rho0)
      .field("rho_tilde0", f.rho_tilde0)
      .field("curvature_integral", f.curvature_integral);
  std::cout << out.str() << "\n";
  return 0;
}

int run_norms(const CommonArgs& args, int N) {
  const auto m = coulombgas::measure::parse_measure(args.measure_spec);
  const Kind kind = parse_kind(args.kind);
  const coulombgas::norms::ChargedEnsemble e(m, N, args.alpha, args.c, kind);
  std::vector<coulombgas::norms::LogNorm> rows(e.norm_index_count());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int j = 0; j < e.norm_index_count(); ++j)
    rows[j] = coulombgas::norms::log_norm(e, j);

  auto tau_of = [&](int j) {
    return kind == Kind::Determinantal ? coulombgas::norms::tau_c(e, j)
                                       : coulombgas::norms::tilde_tau_c(e, j);
  };
  if (args.format == "csv") {
    std::cout << "j,tau,peak,log_h,err_estimate\n";
    for (const auto& r : rows)
      std::cout << r.j << "," << num(tau_of(r.j)) << "," << num(r.peak) << ","
                << num(r.log_value) << "," << num(r.quadrature_error) << "\n";
    return 0;
  }
  std::ostringstream list;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    JsonObject row;
    row.field("j", rows[i].j)
        .field("tau", tau_of(rows[i].j))
        .field("peak", rows[i].peak)
        .field("log_h", rows[i].log_value)
        .field("err_estimate", rows[i].quadrature_error);
    list << (i ? "," : "") << row.str();
  }
  JsonObject out;
  out.field("measure", m.label())
      .field("N", N)
      .field("alpha", args.alpha)
      .field("c", args.c)
      .field("kind", args.kind)
      .raw("norms", "[" + list.str() + "]");
  std::cout << out.str() << "\n";
  return 0;
}

int run_free_energy(const CommonArgs& args, int N, const std::string& geometry) {
  const auto m = coulombgas::measure::parse_measure(args.measure_spec);
  const Kind kind = parse_kind(args.kind);
  if (geometry != "plane" && geometry != "sphere")
    throw std::invalid_argument("--geometry must be plane or sphere");
  const coulombgas::norms::ChargedEnsemble e(m, N, args.alpha, args.c, kind);
  auto fe = coulombgas::free_energy::log_z_exact(e);
  if (geometry == "sphere") fe = coulombgas::free_energy::to_sphere_geometry(fe);
  double err = 0.0;
  for (const auto& ln : fe.per_norm) err += ln.quadrature_error;
  if (args.format == "csv") {
    std::cout << "measure,N,alpha,c,kind,geometry,log_z,err_estimate\n"
              << csv_field(m.label()) << "," << N << "," << num(args.alpha) << ","
              << num(args.c) << "," << args.kind << "," << geometry << ","
              << num(fe.log_z) << "," << num(err) << "\n";
    return 0;
  }
  JsonObject out;
  out.field("measure", m.label())
      .field("N", N)
      .field("alpha", args.alpha)
      .field("c", args.c)
      .field("kind", args.kind)
      .field("geometry", geometry)
      .field("log_z", fe.log_z)
      .field("err_estimate", err);
  std::cout << out.str() << "\n";
  return 0;
}

int run_expansion(const CommonArgs& args, std::optional<int> N) {
  const auto m = coulombgas::measure::parse_measure(args.measure_spec);
  const Kind kind = parse_kind(args.kind);
  const auto f = coulombgas::measure::functionals(m);
  const auto coeffs =
      kind == Kind::Determinantal
          ? coulombgas::expansion::det_coefficients(f, args.alpha, args.c)
          : coulombgas::expansion::pfaff_coefficients(f, args.alpha, args.c);
  if (args.format == "csv") {
    std::cout << "c1,c2,c3,c4,c5\n"
              << num(coeffs.c1) << "," << num(coeffs.c2) << ","
              << num(coeffs.c3) << "," << num(coeffs.c4) << ","
              << num(coeffs.c5) << "\n";
    return 0;
  }
  JsonObject funcs;
  funcs.field("I", f.energy)
      .field("E", f.entropy)
      .field("U0", f.u_zero)
      .field("rho0", f.rho0)
      .field("rho_tilde0", f.rho_tilde0)
      .field("curvature_integral", f.curvature_integral);
  std::ostringstream terms;
  for (int i = 0; i < 5; ++i) {
    JsonObject group;
    for (const auto& t : coeffs.term_breakdown[i]) group.field(t.name, t.value);
    terms << (i ? "," : "") << quoted("c" + std::to_string(i + 1)) << ":"
          << group.str();
  }
  JsonObject out;
  out.field("measure", m.label())
      .field("alpha", args.alpha)
      .field("c", args.c)
      .field("kind", args.kind)
      .raw("functionals", funcs.str())
      .field("c1", coeffs.c1)
      .field("c2", coeffs.c2)
      .field("c3", coeffs.c3)
      .field("c4", coeffs.c4)
      .field("c5", coeffs.c5)
      .raw("terms", "{" + terms.str() + "}");
  if (N) {
    out.field("N", *N);
    out.field("value_at_N", coulombgas::expansion::evaluate(coeffs, *N));
    out.field("n_form_at_N", coulombgas::expansion::evaluate_n_form(
                                 f, args.alpha, args.c, *N, kind));
  }
  std::cout << out.str() << "\n";
  return 0;
}

int run_residuals(const CommonArgs& args, const std::vector<int>& grid,
                  bool fit) {
  const auto m = coulombgas::measure::parse_measure(args.measure_spec);
  const Kind kind = parse_kind(args.kind);
  const auto report = coulombgas::expansion::residual_sweep(
      m, args.alpha, args.c, kind, grid, fit);
  if (args.format == "csv") {
    std::cout << "N,exact,predicted,residual\n";
    for (std::size_t i = 0; i < report.n_grid.size(); ++i)
      std::cout << report.n_grid[i] << "," << num(report.exact[i]) << ","
                << num(report.predicted[i]) << "," << num(report.residual[i])
                << "\n";
    return 0;
  }
  std::ostringstream rows;
  for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
    JsonObject row;
    row.field("N", report.n_grid[i])
        .field("exact", report.exact[i])
        .field("predicted", report.predicted[i])
        .field("residual", report.residual[i]);
    rows << (i ? "," : "") << row.str();
  }
  JsonObject out;
  out.field("measure", m.label())
      .field("alpha", args.alpha)
      .field("c", args.c)
      .field("kind", args.kind)
      .raw("rows", "[" + rows.str() + "]");
  if (report.fitted_constants) {
    const auto& fc = *report.fitted_constants;
    JsonObject fitted;
    fitted.field("c1", fc[0])
        .field("c2", fc[1])
        .field("c3", fc[2])
        .field("c4", fc[3])
        .field("c5", fc[4]);
    out.raw("fitted", fitted.str());
  }
  std::cout << out.str() << "\n";
  return 0;
}

int run_verify(const CommonArgs& args, int only_id) {
  const auto results = coulombgas::verify::run_acceptance(only_id);
  bool all = true;
  if (args.format == "csv") {
    std::cout << "id,name,passed,detail\n";
    for (const auto& r : results) {
      std::cout << r.id << "," << csv_field(r.name) << ","
                << (r.passed ? "1" : "0") << "," << csv_field(r.detail) << "\n";
      all = all && r.passed;
    }
  } else {
    std::ostringstream rows;
    bool first = true;
    for (const auto& r : results) {
      JsonObject row;
      row.field("id", r.id)
          .field("name", r.name)
          .field("passed", r.passed)
          .field("detail", r.detail);
      rows << (first ? "" : ",") << row.str();
      first = false;
      all = all && r.passed;
    }
    JsonObject out;
    out.raw("criteria", "[" + rows.str() + "]").field("all_passed", all);
    std::cout << out.str() << "\n";
  }
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact free energies of determinantal and Pfaffian Coulomb gases on "
      "the sphere, with their asymptotic expansions"};
  app.require_subcommand(1);
  CommonArgs args;
  int N = 0;
  int verify_id = 0;
  std::string geometry = "plane";
  std::vector<int> grid;
  bool fit = false;

  auto* functionals = app.add_subcommand(
      "functionals", "energy, entropy, and related functionals of a measure");
  add_common_options(functionals, args);

  auto* norms_cmd =
      app.add_subcommand("norms", "log orthogonal norms for every index");
  add_common_options(norms_cmd, args);
  add_charge_options(norms_cmd, args);
  norms_cmd->add_option("--N", N, "number of particles")->required();

  auto* fe_cmd = app.add_subcommand("free-energy", "exact log Z");
  add_common_options(fe_cmd, args);
  add_charge_options(fe_cmd, args);
  fe_cmd->add_option("--N", N, "number of particles")->required();
  fe_cmd->add_option("--geometry", geometry, "normalization: plane | sphere");

  auto* exp_cmd = app.add_subcommand(
      "expansion", "five-term free-energy expansion coefficients");
  add_common_options(exp_cmd, args);
  add_charge_options(exp_cmd, args);
  exp_cmd->add_option("--N", N, "also evaluate the series at this N");

  auto* res_cmd = app.add_subcommand(
      "residuals", "exact log Z minus the five-term prediction over an N grid");
  add_common_options(res_cmd, args);
  add_charge_options(res_cmd, args);
  res_cmd->add_option("--N-grid", grid, "ascending particle counts")
      ->required()
      ->delimiter(',');
  res_cmd->add_flag("--fit", fit,
                    "least-squares coefficient recovery (needs >= 5 points)");

  auto* verify_cmd =
      app.add_subcommand("verify", "run the built-in verification suite");
  add_common_options(verify_cmd, args);
  verify_cmd->add_option("--criterion", verify_id,
                         "run a single criterion by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    validate_common(args);
    if (functionals->parsed()) return run_functionals(args);
    if (norms_cmd->parsed()) return run_norms(args, N);
    if (fe_cmd->parsed()) return run_free_energy(args, N, geometry);
    if (exp_cmd->parsed())
      return run_expansion(args, exp_cmd->count("--N") ? std::optional<int>(N)
                                                       : std::nullopt);
    if (res_cmd->parsed()) return run_residuals(args, grid, fit);
    if (verify_cmd->parsed()) return run_verify(args, verify_id);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

// Command-line front end: catalog listing, curve emission (m, mu, V, V_eff,
// psi_n) as CSV, spectral verification with JSON reports, and coherent-state
// profiles.
//
// Exit codes: 0 success (including "excluded" verification verdicts),
// 1 verification FAIL, 2 usage / validation errors.

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gho/coherent.hpp"
#include "gho/kernels.hpp"
#include "gho/mass.hpp"
#include "gho/oscillator.hpp"
#include "gho/spectral.hpp"

namespace {

constexpr int kDefaultGridN = 2401;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int default_grid_n() {
  if (const char* env = std::getenv("GHO_DEFAULT_GRID_N")) {
    const int n = std::atoi(env);
    if (n >= 9) return n;
  }
  return kDefaultGridN;
}

struct MassOptions {
  std::string kind_name = "constant";
  std::optional<double> a;
  std::optional<double> q;
  std::string profile_path;
};

void add_mass_options(CLI::App* cmd, MassOptions& opt) {
  cmd->add_option("--mass", opt.kind_name,
                  "mass kind (constant, rational-square, exponential, tanh-shift, "
                  "power-law, sech-square, lorentz-square, custom)");
  cmd->add_option("--a", opt.a, "mass parameter a");
  cmd->add_option("--q", opt.q, "mass parameter q (lorentz-square)");
  cmd->add_option("--profile", opt.profile_path, "x,m CSV profile for --mass custom");
}

gho::MassSpec resolve_mass(const MassOptions& opt) {
  const auto kind = gho::mass_kind_from_name(opt.kind_name);
  if (!kind) throw gho::InvalidParamError("unknown mass kind: " + opt.kind_name);
  if (*kind == gho::MassKind::Custom) {
    if (opt.profile_path.empty())
      throw gho::InvalidParamError("--mass custom requires --profile");
    return gho::load_custom_profile_csv(opt.profile_path);
  }
  gho::Params params;
  if (opt.a) params["a"] = *opt.a;
  if (opt.q) params["q"] = *opt.q;
  return gho::make_mass(*kind, params);
}

gho::Grid resolve_grid(const gho::MassSpec& spec, const gho::MuMap& map, int grid_n,
                       std::optional<double> xlo, std::optional<double> xhi) {
  gho::GridPolicy policy;
  policy.n = grid_n;
  if (xlo && xhi) return gho::Grid(*xlo, *xhi, grid_n);
  gho::Grid auto_grid = gho::make_auto_grid(spec, map, policy);
  return gho::Grid(xlo.value_or(auto_grid.x_lo), xhi.value_or(auto_grid.x_hi), grid_n);
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw gho::Error("cannot open output file: " + path);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

// --- catalog ---------------------------------------------------------------

int cmd_catalog() {
  struct Row {
    const char *kind, *params, *mu, *note;
  };
  const Row rows[] = {
      {"constant", "-", "x", "full-line; orthonormal eigenfamily"},
      {"rational-square", "a>0", "x + (a-1) arctan x",
       "full-line; a=1 => constant mass (plain oscillator)"},
      {"exponential", "a", "(2/a) e^(ax/2); x at a=0",
       "half-line for a>0; eigenfamily not orthogonal"},
      {"tanh-shift", "a", "(sqrt2/a) ln(e^(ax)+sqrt(1+e^(2ax))); x at a=0",
       "half-line for a>0; eigenfamily not orthogonal"},
      {"power-law", "a", "2/(a+2) x^((a+2)/2); ln x at a=-2",
       "domain x>0; half-line; eigenfamily not orthogonal"},
      {"sech-square", "a>0", "(2/a) arctan e^(ax)",
       "bounded mu-range; excluded (states only formal)"},
      {"lorentz-square", "a, q>0", "(a/sqrt q) arctan(x/sqrt q)",
       "bounded mu-range; excluded (states only formal)"},
  };
  std::printf("%-16s %-8s %-45s %s\n", "kind", "params", "mu(x)", "notes");
  for (const Row& r : rows) std::printf("%-16s %-8s %-45s %s\n", r.kind, r.params, r.mu, r.note);
  return 0;
}

// --- curves ------------------------------------------------------------------

int cmd_curves(const MassOptions& mass_opt, const std::vector<int>& levels, int grid_n,
               std::optional<double> xlo, std::optional<double> xhi,
               const std::string& out_path) {
  const gho::MassSpec spec = resolve_mass(mass_opt);
  const gho::MuMap map = gho::mu_map(spec);
  const gho::RangeClass rc = gho::classify_range(map);
  const gho::Grid grid = resolve_grid(spec, map, grid_n, xlo, xhi);
  const gho::OrderingParams ordering = gho::gho_ordering();

  std::vector<gho::WaveFunction> states;
  for (int n : levels) states.push_back(gho::eigenfunction(spec, map, rc, n, grid));

  std::string csv = "x,m,mu,V,V_eff";
  for (int n : levels) csv += ",psi_" + std::to_string(n);
  csv += "\n";
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    csv += fmt17(x);
    csv += ',' + fmt17(spec.mass(x));
    csv += ',' + fmt17(map.mu(x));
    csv += ',' + fmt17(gho::base_potential(map, x));
    csv += ',' + fmt17(gho::effective_potential(spec, ordering, map, x));
    for (std::size_t s = 0; s < states.size(); ++s)
      csv += ',' + fmt17(states[s].real_part()[i]);
    csv += '\n';
  }
  write_atomic(out_path, csv);
  std::fprintf(stderr, "wrote %s (%d rows, %zu columns)\n", out_path.c_str(), grid.n,
               5 + levels.size());
  return 0;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const MassOptions& mass_opt, int grid_n, std::optional<double> tol,
               const std::string& out_path) {
  const gho::MassSpec spec = resolve_mass(mass_opt);
  gho::VerifyConfig config;
  config.grid.n = grid_n;
  if (tol) config.eig_tol = *tol;
  const gho::SpectralReport report = gho::verify(spec, config);
  const std::string json = gho::report_to_json(report) + "\n";
  if (out_path.empty())
    std::fputs(json.c_str(), stdout);
  else
    write_atomic(out_path, json);
  return report.verdict == "FAIL" ? 1 : 0;
}

// --- coherent ------------------------------------------------------------------

int cmd_coherent(const MassOptions& mass_opt, std::complex<double> z, int grid_n,
                 std::optional<double> xlo, std::optional<double> xhi,
                 const std::string& out_path) {
  const gho::MassSpec spec = resolve_mass(mass_opt);
  const gho::MuMap map = gho::mu_map(spec);
  const gho::RangeClass rc = gho::classify_range(map);
  const gho::Grid grid = resolve_grid(spec, map, grid_n, xlo, xhi);

  const gho::CoherentState cs = gho::make_coherent(z);
  const gho::WaveFunction psi = gho::coherent_wavefunction(spec, map, rc, cs, grid);

  std::string csv = "x,re_psi,im_psi,abs2_psi\n";
  for (int i = 0; i < grid.n; ++i) {
    const std::complex<double> v = psi.value(i);
    csv += fmt17(grid.x(i));
    csv += ',' + fmt17(v.real());
    csv += ',' + fmt17(v.imag());
    csv += ',' + fmt17(std::norm(v));
    csv += '\n';
  }
  write_atomic(out_path, csv);

  const gho::Moments mu = gho::expectation_mu(cs);
  const gho::Moments pi = gho::expectation_pi(cs);
  const auto [dmu, dpi] = gho::uncertainties(cs);
  nlohmann::json j;
  j["z"] = {{"re", z.real()}, {"im", z.imag()}};
  j["n_trunc"] = cs.n_trunc();
  j["mu_mean"] = mu.mean;
  j["mu_second"] = mu.second;
  j["pi_mean"] = pi.mean;
  j["pi_second"] = pi.second;
  j["delta_mu"] = dmu;
  j["delta_pi"] = dpi;
  std::fputs((j.dump(2) + "\n").c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized harmonic oscillator for position-dependent-mass problems"};
  app.require_subcommand(1);

  // catalog
  CLI::App* catalog = app.add_subcommand("catalog", "list the built-in mass profiles");

  // curves
  CLI::App* curves = app.add_subcommand("curves", "emit x, m, mu, V, V_eff, psi_n as CSV");
  MassOptions curves_mass;
  add_mass_options(curves, curves_mass);
  std::vector<int> levels{0, 1, 2, 3};
  int curves_grid_n = default_grid_n();
  std::optional<double> curves_xlo, curves_xhi;
  std::string curves_out = "curves.csv";
  curves->add_option("--n", levels, "quantum numbers to emit (one psi column each)")
      ->delimiter(',');
  curves->add_option("--grid-n", curves_grid_n, "grid points");
  curves->add_option("--xlo", curves_xlo, "left grid edge (default: auto)");
  curves->add_option("--xhi", curves_xhi, "right grid edge (default: auto)");
  curves->add_option("--out", curves_out, "output CSV path");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "diagonalize and check the spectrum; JSON report");
  MassOptions verify_mass;
  add_mass_options(verify, verify_mass);
  int verify_grid_n = default_grid_n();
  std::optional<double> verify_tol;
  std::string verify_out;
  verify->add_option("--grid-n", verify_grid_n, "grid points");
  verify->add_option("--tol", verify_tol, "eigenvalue tolerance override");
  verify->add_option("--out", verify_out, "report path (default: stdout)");

  // coherent
  CLI::App* coherent = app.add_subcommand("coherent", "coherent-state profile and expectation values");
  MassOptions coherent_mass;
  add_mass_options(coherent, coherent_mass);
  std::pair<double, double> z_parts{0.0, 0.0};
  int coherent_grid_n = default_grid_n();
  std::optional<double> coherent_xlo, coherent_xhi;
  std::string coherent_out = "coherent.csv";
  coherent->add_option("--z", z_parts, "amplitude as re,im")->delimiter(',');
  coherent->add_option("--grid-n", coherent_grid_n, "grid points");
  coherent->add_option("--xlo", coherent_xlo, "left grid edge (default: auto)");
  coherent->add_option("--xhi", coherent_xhi, "right grid edge (default: auto)");
  coherent->add_option("--out", coherent_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (catalog->parsed()) return cmd_catalog();
    if (curves->parsed())
      return cmd_curves(curves_mass, levels, curves_grid_n, curves_xlo, curves_xhi, curves_out);
    if (verify->parsed())
      return cmd_verify(verify_mass, verify_grid_n, verify_tol, verify_out);
    if (coherent->parsed())
      return cmd_coherent(coherent_mass, {z_parts.first, z_parts.second}, coherent_grid_n,
                          coherent_xlo, coherent_xhi, coherent_out);
  } catch (const gho::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

#include "gho/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "gho/kernels.hpp"

namespace gho {

namespace {

std::vector<double> midpoint_weights(const MassSpec& spec, const Grid& grid) {
  // w_{i+1/2} = 1/m between interior-facing nodes; n-1 faces for n nodes.
  std::vector<double> w(grid.n - 1);
  const double h = grid.h();
  for (int i = 0; i + 1 < grid.n; ++i) w[i] = 1.0 / spec.mass(grid.x_lo + (i + 0.5) * h);
  return w;
}

}  // namespace

DiscreteHamiltonian discretize(const MassSpec& spec, const OrderingParams& ordering,
                               const Grid& grid) {
  if (!spec.domain().contains(grid.x_lo) || !spec.domain().contains(grid.x_hi))
    throw OutOfDomainError(spec.domain().contains(grid.x_lo) ? grid.x_hi : grid.x_lo);

  const MuMap map = mu_map(spec);
  const double h = grid.h();
  const double inv2h2 = 1.0 / (2.0 * h * h);
  const std::vector<double> w = midpoint_weights(spec, grid);

  const int ni = grid.n - 2;  // interior nodes
  DiscreteHamiltonian H{grid, std::vector<double>(ni), std::vector<double>(ni - 1),
                        spec.id(), ordering};
  for (int i = 0; i < ni; ++i) {
    const double x = grid.x(i + 1);
    H.diag[i] = (w[i] + w[i + 1]) * inv2h2 + effective_potential(spec, ordering, map, x);
    if (!std::isfinite(H.diag[i])) throw DerivativeError("non-finite Hamiltonian row");
  }
  for (int i = 0; i + 1 < ni; ++i) H.offdiag[i] = -w[i + 1] * inv2h2;
  return H;
}

std::vector<double> lowest_eigenvalues(const DiscreteHamiltonian& H, int k) {
  const int n = static_cast<int>(H.diag.size());
  if (k < 1 || k > n) throw InvalidParamError("eigenvalue count out of range");

  std::vector<double> e2(H.offdiag.size());
  double e2max = 1.0;
  for (std::size_t i = 0; i < e2.size(); ++i) {
    e2[i] = H.offdiag[i] * H.offdiag[i];
    e2max = std::max(e2max, e2[i]);
  }
  const double pivmin = e2max * 1e-300;

  // Gershgorin bounds.
  double gl = std::numeric_limits<double>::infinity();
  double gu = -gl;
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(H.offdiag[i - 1]) : 0.0) +
                     (i + 1 < n ? std::fabs(H.offdiag[i]) : 0.0);
    gl = std::min(gl, H.diag[i] - r);
    gu = std::max(gu, H.diag[i] + r);
  }
  if (!std::isfinite(gl) || !std::isfinite(gu))
    throw ConvergenceError("non-finite spectral bounds");
  const double pad = 1e-12 * std::max(std::fabs(gl), std::fabs(gu)) + 2.0 * pivmin;
  gl -= pad;
  gu += pad;

  std::vector<double> lo(k, gl), hi(k, gu);
  std::vector<double> mids(k);
  std::vector<int> counts(k);
  const double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < 140; ++iter) {
    bool all_done = true;
    for (int j = 0; j < k; ++j) {
      mids[j] = 0.5 * (lo[j] + hi[j]);
      if (hi[j] - lo[j] > 4.0 * eps * std::max({std::fabs(lo[j]), std::fabs(hi[j]), 1e-3}))
        all_done = false;
    }
    if (all_done) break;
    kernels::sturm_count_multi(H.diag, e2, mids, pivmin, counts);
    for (int j = 0; j < k; ++j) {
      // Invariant: count(lo[j]) <= j < count(hi[j]).
      if (counts[j] <= j)
        lo[j] = mids[j];
      else
        hi[j] = mids[j];
    }
  }

  std::vector<double> evs(k);
  for (int j = 0; j < k; ++j) evs[j] = 0.5 * (lo[j] + hi[j]);
  std::sort(evs.begin(), evs.end());
  return evs;
}

double eigen_residual(const MassSpec& spec, const OrderingParams& ordering, int n,
                      const Grid& grid) {
  const MuMap map = mu_map(spec);
  const RangeClass rc = classify_range(map);
  const WaveFunction psi = eigenfunction(spec, map, rc, n, grid);
  const DiscreteHamiltonian H = discretize(spec, ordering, grid);

  const int ni = grid.n - 2;
  std::vector<double> v(psi.real_part().begin() + 1, psi.real_part().begin() + 1 + ni);
  std::vector<double> Hv(ni);
  kernels::tridiag_apply(H.diag, H.offdiag, v, Hv);
  kernels::axpy(-eigenvalue(n), v, Hv);

  // Drop the two rows next to each Dirichlet end; they carry the boundary
  // truncation rather than the scheme's interior error.
  const int drop = 2;
  if (ni <= 2 * drop) throw GridError("grid too coarse for a residual estimate");
  std::span<const double> r(Hv.data() + drop, ni - 2 * drop);
  std::span<const double> vv(v.data(), ni);
  return std::sqrt(kernels::dot(r, r) / kernels::dot(vv, vv));
}

DenseMatrix gram_matrix(const MassSpec& spec, int n_max, const Grid& grid) {
  if (n_max < 0 || n_max > 12) throw InvalidParamError("gram matrix supports n_max <= 12");
  const MuMap map = mu_map(spec);
  const RangeClass rc = classify_range(map);
  const auto family = eigenfunction_family(spec, map, rc, n_max, grid);
  const double h = grid.h();

  DenseMatrix G(n_max + 1, n_max + 1);
  std::vector<double> prod(grid.n);
  for (int i = 0; i <= n_max; ++i)
    for (int j = i; j <= n_max; ++j) {
      kernels::mul(family[i].real_part(), family[j].real_part(), prod);
      const double g = kernels::trapezoid(prod, h);
      G.at(i, j) = g;
      G.at(j, i) = g;
    }
  return G;
}

std::pair<DenseMatrix, DenseMatrix> ladder_matrix_elements(const MassSpec& spec,
                                                           int n_max, const Grid& grid) {
  if (n_max < 0 || n_max > 8) throw InvalidParamError("ladder elements support n_max <= 8");
  const MuMap map = mu_map(spec);
  const RangeClass rc = classify_range(map);
  if (rc != RangeClass::FullLine)
    throw InadmissibleRangeError("ladder matrix elements need a full-line mu-range");

  const auto family = eigenfunction_family(spec, map, rc, n_max, grid);
  const double h = grid.h();
  DenseMatrix raise(n_max + 1, n_max + 1), lower(n_max + 1, n_max + 1);
  std::vector<double> prod(grid.n);
  for (int np = 0; np <= n_max; ++np) {
    const WaveFunction up = apply_raising(spec, map, family[np]);
    const WaveFunction down = apply_lowering(spec, map, family[np]);
    for (int n = 0; n <= n_max; ++n) {
      kernels::mul(family[n].real_part(), up.real_part(), prod);
      raise.at(n, np) = kernels::trapezoid(prod, h);
      kernels::mul(family[n].real_part(), down.real_part(), prod);
      lower.at(n, np) = kernels::trapezoid(prod, h);
    }
  }
  return {std::move(raise), std::move(lower)};
}

// ---------------------------------------------------------------------------
// grid policy
// ---------------------------------------------------------------------------

namespace {

// Solve mu(x) = target on [lo, hi] by bisection (mu is strictly increasing).
double solve_mu(const MuMap& map, double target, double lo, double hi) {
  double flo = map.mu(lo) - target;
  double fhi = map.mu(hi) - target;
  if (flo >= 0.0) return lo;
  if (fhi <= 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-12 * std::max(1.0, std::fabs(mid))) return mid;
    if (map.mu(mid) - target < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Grid auto_grid_impl(const MassSpec& spec, const MuMap& map, const GridPolicy& policy,
                    double converging_gap) {
  const Domain& dom = spec.domain();
  const RangeClass rc = classify_range(map);
  const double gap = (rc == RangeClass::Bounded) ? std::max(converging_gap, policy.bounded_gap)
                                                 : converging_gap;

  const bool lo_infinite = map.mu_min <= -kEffectivelyInfiniteMu;
  const bool hi_infinite = map.mu_max >= kEffectivelyInfiniteMu;

  const double hi_target = hi_infinite ? policy.mu_target : map.mu_max - gap;
  double x_hi = solve_mu(map, hi_target, dom.lo, dom.hi);
  const double lo_target = lo_infinite ? -policy.mu_target : map.mu_min + gap;
  double x_lo = solve_mu(map, lo_target, dom.lo, x_hi);

  if (!(x_hi > x_lo)) throw GridError("auto grid collapsed; domain too narrow");
  return Grid(x_lo, x_hi, policy.n);
}

}  // namespace

Grid make_auto_grid(const MassSpec& spec, const MuMap& map, const GridPolicy& policy) {
  return auto_grid_impl(spec, map, policy, policy.halfline_gap);
}

Grid make_residual_grid(const MassSpec& spec, const MuMap& map, const GridPolicy& policy) {
  return auto_grid_impl(spec, map, policy, policy.residual_gap);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

SpectralReport verify(const MassSpec& spec, const VerifyConfig& config) {
  SpectralReport rep;
  rep.mass_id = spec.id();
  rep.kind = spec.kind();
  rep.params = spec.params();

  const MuMap map = mu_map(spec);
  rep.range_class = classify_range(map);
  rep.admissible = admissible_for_orthonormal_family(rep.range_class);

  rep.grid = make_auto_grid(spec, map, config.grid);
  rep.residual_grid = make_residual_grid(spec, map, config.grid);

  const OrderingParams ordering = gho_ordering();

  // Spectrum of the discretized Hamiltonian vs n + 1/2.
  const DiscreteHamiltonian H = discretize(spec, ordering, rep.grid);
  const std::vector<double> evs = lowest_eigenvalues(H, config.k_levels);
  double eig_max_err = 0.0;
  bool levels_consecutive = true;
  for (int j = 0; j < config.k_levels; ++j) {
    LevelResult lr;
    lr.computed = evs[j];
    lr.matched_level = std::max(0, static_cast<int>(std::lround(evs[j] - 0.5)));
    lr.abs_error = std::fabs(evs[j] - (lr.matched_level + 0.5));
    rep.levels.push_back(lr);
    eig_max_err = std::max(eig_max_err, lr.abs_error);
    if (lr.matched_level != j) levels_consecutive = false;
  }

  // Residuals of the sampled eigenstates (coefficient blow-up at converging
  // edges is excluded by the residual grid).
  double res_max = 0.0;
  for (int n = 0; n <= config.residual_n_max; ++n) {
    const double r = eigen_residual(spec, ordering, n, rep.residual_grid);
    rep.residuals.push_back(r);
    res_max = std::max(res_max, r);
  }

  // Orthonormality.
  const DenseMatrix G = gram_matrix(spec, config.gram_n_max, rep.grid);
  for (int i = 0; i <= config.gram_n_max; ++i)
    for (int j = 0; j <= config.gram_n_max; ++j) {
      const double dev = (i == j) ? std::fabs(G.at(i, j) - 1.0) : std::fabs(G.at(i, j));
      if (i == j)
        rep.gram_max_diag_dev = std::max(rep.gram_max_diag_dev, dev);
      else
        rep.gram_max_offdiag = std::max(rep.gram_max_offdiag, dev);
    }

  // Ground-state annihilation on the residual grid interior.
  {
    const RangeClass rc = rep.range_class;
    const WaveFunction psi0 = eigenfunction(spec, map, rc, 0, rep.residual_grid);
    const WaveFunction a0 = apply_lowering(spec, map, psi0);
    const std::span<const double> a0v = a0.real_part();
    const std::span<const double> p0v = psi0.real_part();
    const std::size_t drop = 2;
    rep.annihilation_ratio =
        kernels::max_abs(a0v.subspan(drop, a0v.size() - 2 * drop)) / kernels::max_abs(p0v);
  }

  // Ladder matrix elements (orthonormal families only).
  if (rep.admissible) {
    const auto [raise, lower] = ladder_matrix_elements(spec, config.ladder_n_max, rep.grid);
    double dev = 0.0;
    for (int n = 0; n <= config.ladder_n_max; ++n)
      for (int np = 0; np <= config.ladder_n_max; ++np) {
        const double expect_raise = (n == np + 1) ? std::sqrt(np + 1.0) : 0.0;
        const double expect_lower = (n == np - 1) ? std::sqrt(static_cast<double>(np)) : 0.0;
        dev = std::max(dev, std::fabs(raise.at(n, np) - expect_raise));
        dev = std::max(dev, std::fabs(lower.at(n, np) - expect_lower));
      }
    rep.ladder_max_dev = dev;
  }

  // Gating checks. Only the admissible (full-line) family asserts the whole
  // oscillator structure; other range classes report their numbers.
  if (rep.admissible) {
    rep.checks.push_back({"eigenvalues match n+1/2", eig_max_err, config.eig_tol,
                          eig_max_err < config.eig_tol && levels_consecutive});
    rep.checks.push_back({"eigenstate residuals", res_max, config.residual_tol,
                          res_max < config.residual_tol});
    rep.checks.push_back({"gram matrix is identity",
                          std::max(rep.gram_max_offdiag, rep.gram_max_diag_dev),
                          config.gram_tol,
                          std::max(rep.gram_max_offdiag, rep.gram_max_diag_dev) < config.gram_tol});
    rep.checks.push_back({"ladder matrix elements", *rep.ladder_max_dev, config.ladder_tol,
                          *rep.ladder_max_dev < config.ladder_tol});
    rep.checks.push_back({"ground state annihilated", rep.annihilation_ratio,
                          config.annihilation_tol,
                          rep.annihilation_ratio < config.annihilation_tol});
    const bool pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                                  [](const CheckResult& c) { return c.pass; });
    rep.verdict = pass ? "PASS" : "FAIL";
  } else if (rep.range_class == RangeClass::Bounded) {
    rep.verdict = "excluded (bounded mu-range: eigenfamily is only formal)";
  } else {
    rep.verdict = "caveat (half-line mu-range: eigenfamily not orthogonal)";
  }
  return rep;
}

std::string report_to_json(const SpectralReport& rep) {
  nlohmann::json j;
  j["mass"]["id"] = rep.mass_id;
  j["mass"]["kind"] = mass_kind_name(rep.kind);
  j["mass"]["params"] = rep.params;
  j["range_class"] = range_class_name(rep.range_class);
  j["admissible"] = rep.admissible;
  j["grid"] = {{"x_lo", rep.grid.x_lo}, {"x_hi", rep.grid.x_hi}, {"n", rep.grid.n},
               {"h", rep.grid.h()}};
  j["residual_grid"] = {{"x_lo", rep.residual_grid.x_lo},
                        {"x_hi", rep.residual_grid.x_hi},
                        {"n", rep.residual_grid.n}};
  auto& lv = j["eigenvalues"];
  lv["computed"] = nlohmann::json::array();
  lv["matched_level"] = nlohmann::json::array();
  lv["abs_error"] = nlohmann::json::array();
  for (const LevelResult& l : rep.levels) {
    lv["computed"].push_back(l.computed);
    lv["matched_level"].push_back(l.matched_level);
    lv["abs_error"].push_back(l.abs_error);
  }
  j["residuals"] = rep.residuals;
  j["gram"] = {{"max_offdiag", rep.gram_max_offdiag},
               {"max_diag_dev", rep.gram_max_diag_dev}};
  if (rep.ladder_max_dev)
    j["ladder"] = {{"max_deviation", *rep.ladder_max_dev}};
  else
    j["ladder"] = nullptr;
  j["annihilation_ratio"] = rep.annihilation_ratio;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : rep.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass}});
  j["verdict"] = rep.verdict;
  return j.dump(2);
}

}  // namespace gho

#pragma once

// Independent verification machinery: flux-form discretization of the
// position-dependent-mass Hamiltonian, a Sturm-bisection tridiagonal
// eigensolver, and the orthonormality / ladder-element / residual checks
// aggregated into a report.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gho/grid.hpp"
#include "gho/mass.hpp"
#include "gho/oscillator.hpp"

namespace gho {

/// Symmetric tridiagonal matrix acting on the interior nodes of `grid`
/// (Dirichlet at both ends): row i has diagonal
/// (w_{i-1/2} + w_{i+1/2})/(2h^2) + V_eff(x_i) and off-diagonal
/// -w_{i+1/2}/(2h^2), with w = 1/m at midpoints.
struct DiscreteHamiltonian {
  Grid grid;
  std::vector<double> diag;     // size grid.n - 2
  std::vector<double> offdiag;  // size grid.n - 3
  std::string mass_id;
  OrderingParams ordering;
};

DiscreteHamiltonian discretize(const MassSpec& spec, const OrderingParams& ordering,
                               const Grid& grid);

/// The k smallest eigenvalues, ascending, by Sturm-sequence bisection.
/// Each is resolved to ~1e-13 of the spectral range.
std::vector<double> lowest_eigenvalues(const DiscreteHamiltonian& H, int k);

/// ||(H - (n+1/2)) psi_n||_2 / ||psi_n||_2 on the grid interior, excluding
/// the two rows adjacent to each Dirichlet end.
double eigen_residual(const MassSpec& spec, const OrderingParams& ordering, int n,
                      const Grid& grid);

struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<double> data;
  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Gram matrix G_{nm} = trapezoid integral of psi_n psi_m, n,m <= n_max.
DenseMatrix gram_matrix(const MassSpec& spec, int n_max, const Grid& grid);

/// Quadrature matrix elements of the raising and lowering operators
/// (<n|A+|n'>, <n|A|n'>) for n,n' <= n_max. Full-line ranges only.
std::pair<DenseMatrix, DenseMatrix> ladder_matrix_elements(const MassSpec& spec,
                                                           int n_max, const Grid& grid);

// ---------------------------------------------------------------------------

struct GridPolicy {
  int n = 2401;              // grid points (GHO_DEFAULT_GRID_N at the CLI)
  double mu_target = 8.0;    // |mu| at edges whose mu-limit is infinite
  double halfline_gap = 1e-4;  // mu gap left at a converging edge (half-line)
  double bounded_gap = 1e-2;   //   " (bounded range; keeps the bulk resolved)
  double residual_gap = 0.1;   // converging-edge gap for residual checks only
};

/// Grid spanning the physically relevant window: each edge is placed where
/// |mu| reaches mu_target, or (for an edge whose mu-limit is finite) where mu
/// is within `gap` of its limit, clamped to the domain.
Grid make_auto_grid(const MassSpec& spec, const MuMap& map, const GridPolicy& policy);

/// Same policy with the converging-edge gap widened to residual_gap; used for
/// residual checks, which are dominated by coefficient blow-up at a
/// converging edge.
Grid make_residual_grid(const MassSpec& spec, const MuMap& map, const GridPolicy& policy);

struct VerifyConfig {
  GridPolicy grid;
  int k_levels = 6;
  int gram_n_max = 7;
  int ladder_n_max = 6;
  int residual_n_max = 3;
  double eig_tol = 1e-3;
  double residual_tol = 1e-3;
  double gram_tol = 1e-6;
  double ladder_tol = 1e-5;
  double annihilation_tol = 1e-5;
};

struct LevelResult {
  double computed;    // discrete eigenvalue
  int matched_level;  // nearest n with E_n = n + 1/2
  double abs_error;   // |computed - (matched_level + 1/2)|
};

struct CheckResult {
  std::string name;
  double value;
  double tol;
  bool pass;
};

struct SpectralReport {
  std::string mass_id;
  MassKind kind = MassKind::Constant;
  Params params;
  RangeClass range_class = RangeClass::FullLine;
  bool admissible = false;
  Grid grid;
  Grid residual_grid;
  std::vector<LevelResult> levels;
  std::vector<double> residuals;      // levels 0..residual_n_max
  double gram_max_offdiag = 0.0;
  double gram_max_diag_dev = 0.0;
  std::optional<double> ladder_max_dev;  // full-line only
  double annihilation_ratio = 0.0;       // max |A psi_0| / max |psi_0|, interior
  std::vector<CheckResult> checks;       // gating checks (admissible family only)
  std::string verdict;                   // PASS / FAIL / excluded... / caveat...
};

SpectralReport verify(const MassSpec& spec, const VerifyConfig& config = {});

/// Structured JSON document for the report.
std::string report_to_json(const SpectralReport& report);

}  // namespace gho

#pragma once

// The generalized harmonic oscillator: ladder operators built from the mass
// profile, the effective potential of the symmetrized kinetic ordering, and
// the Hermite-function eigenstates carried onto the grid.

#include <span>
#include <vector>

#include "gho/grid.hpp"
#include "gho/mass.hpp"

namespace gho {

/// Exponents (alpha, beta, gamma) of the symmetrized kinetic operator
/// m^alpha p m^beta p m^gamma, constrained by alpha+beta+gamma = -1 and
/// alpha = gamma.
struct OrderingParams {
  double alpha;
  double beta;
  double gamma;

  OrderingParams(double a, double b, double g);
};

/// The ordering that closes the ladder algebra: (-1/4, -1/2, -1/4).
OrderingParams gho_ordering();

/// Base potential V(x) = mu(x)^2 / 2.
double base_potential(const MuMap& map, double x);

/// V_eff = V + (beta+1)/4 * m''/m^2 - [alpha(alpha+beta+1)+beta+1]/2 * m'^2/m^3,
/// evaluated with analytic mass derivatives for catalog kinds and stencils
/// for Custom.
double effective_potential(const MassSpec& spec, const OrderingParams& ordering,
                           const MuMap& map, double x);

/// E_n = n + 1/2.
double eigenvalue(int n);

inline constexpr int kMaxHermiteDegree = 64;

/// Physicists' Hermite polynomial H_n(t) by the three-term recurrence.
/// Degrees above kMaxHermiteDegree risk silent overflow and are rejected.
double hermite(int n, double t);

/// Same recurrence applied across a sample array (runs on the array kernels).
std::vector<double> hermite_array(int n, std::span<const double> t);

/// Closed-form normalization: 1/sqrt(2^n n! sqrt(pi)) on the full line,
/// sqrt(2) times that on the half line. Bounded ranges have no closed form
/// (eigenfunction() normalizes those numerically) and throw.
double normalization_constant(int n, RangeClass rc);

/// psi_n = N_n m^{1/4} e^{-mu^2/2} H_n(mu) sampled on the grid. Bounded-range
/// states are normalized by the trapezoid rule instead and marked formal.
WaveFunction eigenfunction(const MassSpec& spec, const MuMap& map, RangeClass rc,
                           int n, const Grid& grid);

/// All of psi_0..psi_{ n_max } in one recurrence sweep.
std::vector<WaveFunction> eigenfunction_family(const MassSpec& spec, const MuMap& map,
                                               RangeClass rc, int n_max, const Grid& grid);

/// Lowering operator: (1/sqrt2)[ m^{-1/4} d/dx (m^{-1/4} psi) + mu psi ],
/// derivative by the 5-point stencil.
WaveFunction apply_lowering(const MassSpec& spec, const MuMap& map, const WaveFunction& wf);

/// Raising operator: same with the derivative term negated.
WaveFunction apply_raising(const MassSpec& spec, const MuMap& map, const WaveFunction& wf);

/// Deformed momentum pi = -i m^{-1/4} d/dx m^{-1/4} applied on the grid.
WaveFunction apply_deformed_momentum(const MassSpec& spec, const WaveFunction& wf);

/// Value of the ladder commutator [A, A+] at x for a trial ordering exponent
/// beta: mu'/sqrt(m) - (2 beta + 1)/(4m) [ m''/m - (3/2)(m'/m)^2 ].
/// Identically 1 at beta = -1/2.
double commutator_profile(const MassSpec& spec, double beta, double x);

/// H psi = -1/2 (1/m psi')' + V psi in the symmetric flux form (midpoint
/// weights of 1/m, Dirichlet outside the grid). `potential` is evaluated at
/// every grid point.
WaveFunction apply_hamiltonian(const MassSpec& spec, const OrderingParams& ordering,
                               const std::function<double(double)>& potential,
                               const WaveFunction& wf);

}  // namespace gho

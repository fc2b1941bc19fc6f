#include "gho/oscillator.hpp"

#include <cmath>

#include "gho/kernels.hpp"

namespace gho {

namespace {

constexpr double kOrderingConstraintTol = 1e-12;

void check_grid_in_domain(const MassSpec& spec, const Grid& grid) {
  if (!spec.domain().contains(grid.x_lo) || !spec.domain().contains(grid.x_hi))
    throw OutOfDomainError(spec.domain().contains(grid.x_lo) ? grid.x_hi : grid.x_lo);
}

std::vector<double> sample_mu(const MuMap& map, const Grid& grid) {
  std::vector<double> mu(grid.n);
  for (int i = 0; i < grid.n; ++i) mu[i] = map.mu(grid.x(i));
  return mu;
}

std::vector<double> sample_mass_pow(const MassSpec& spec, const Grid& grid, double p) {
  std::vector<double> m(grid.n);
  for (int i = 0; i < grid.n; ++i) m[i] = std::pow(spec.mass(grid.x(i)), p);
  return m;
}

// (1/sqrt2)[ sign * m^{-1/4} D(m^{-1/4} f) + mu f ] on one real component.
std::vector<double> ladder_component(std::span<const double> f,
                                     std::span<const double> mq,
                                     std::span<const double> mu, double h,
                                     double sign) {
  const std::size_t n = f.size();
  std::vector<double> g(n), d(n);
  kernels::mul(mq, f, g);
  kernels::deriv5(g, h, d);
  kernels::mul(mq, d, d);
  std::vector<double> out(n);
  kernels::mul(mu, f, out);
  kernels::axpy(sign, d, out);
  kernels::scal(M_SQRT1_2, out);
  return out;
}

}  // namespace

OrderingParams::OrderingParams(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
  if (std::fabs(a + b + g + 1.0) > kOrderingConstraintTol)
    throw InvalidParamError("ordering exponents must satisfy alpha+beta+gamma = -1");
  if (std::fabs(a - g) > kOrderingConstraintTol)
    throw InvalidParamError("ordering exponents must satisfy alpha = gamma");
}

OrderingParams gho_ordering() { return {-0.25, -0.5, -0.25}; }

double base_potential(const MuMap& map, double x) {
  const double mu = map.mu(x);
  return 0.5 * mu * mu;
}

double effective_potential(const MassSpec& spec, const OrderingParams& ordering,
                           const MuMap& map, double x) {
  const double m = spec.mass(x);
  const double m1 = spec.mass_d1(x);
  const double m2 = spec.mass_d2(x);
  const double a = ordering.alpha, b = ordering.beta;
  const double v = base_potential(map, x) + 0.25 * (b + 1.0) * m2 / (m * m) -
                   0.5 * (a * (a + b + 1.0) + b + 1.0) * m1 * m1 / (m * m * m);
  if (!std::isfinite(v)) throw DerivativeError("non-finite effective potential");
  return v;
}

double eigenvalue(int n) {
  if (n < 0) throw InvalidParamError("quantum number must be non-negative");
  return n + 0.5;
}

double hermite(int n, double t) {
  if (n < 0) throw InvalidParamError("Hermite degree must be non-negative");
  if (n > kMaxHermiteDegree) throw DegreeError("Hermite degree above supported cap 64");
  double hkm1 = 1.0;  // H_0
  if (n == 0) return hkm1;
  double hk = 2.0 * t;  // H_1
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * hk - 2.0 * k * hkm1;
    hkm1 = hk;
    hk = next;
  }
  return hk;
}

std::vector<double> hermite_array(int n, std::span<const double> t) {
  if (n < 0) throw InvalidParamError("Hermite degree must be non-negative");
  if (n > kMaxHermiteDegree) throw DegreeError("Hermite degree above supported cap 64");
  const std::size_t len = t.size();
  std::vector<double> hkm1(len, 1.0);
  if (n == 0) return hkm1;
  std::vector<double> hk(len), next(len);
  for (std::size_t i = 0; i < len; ++i) hk[i] = 2.0 * t[i];
  for (int k = 1; k < n; ++k) {
    kernels::hermite_step(t, hk, hkm1, 2.0 * k, next);
    std::swap(hkm1, hk);
    std::swap(hk, next);
  }
  return hk;
}

double normalization_constant(int n, RangeClass rc) {
  if (n < 0) throw InvalidParamError("quantum number must be non-negative");
  if (rc == RangeClass::Bounded)
    throw BoundedRangeError("no closed-form normalization for a bounded mu-range");
  double lg = n * M_LN2 + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI);
  if (rc == RangeClass::HalfLine) lg -= M_LN2;  // integral halves, norm gains sqrt 2
  return std::exp(-0.5 * lg);
}

namespace {

// Shared scaffolding for eigenfunction construction: the envelope
// m^{1/4} e^{-mu^2/2} and the mu samples.
struct EigenBasisData {
  std::vector<double> mu;
  std::vector<double> envelope;
};

EigenBasisData eigen_basis_data(const MassSpec& spec, const MuMap& map, const Grid& grid) {
  EigenBasisData data;
  data.mu = sample_mu(map, grid);
  data.envelope.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double m = spec.mass(grid.x(i));
    data.envelope[i] = std::pow(m, 0.25) * std::exp(-0.5 * data.mu[i] * data.mu[i]);
  }
  return data;
}

WaveFunction finish_state(const Grid& grid, std::vector<double> values, int n,
                          RangeClass rc) {
  if (rc == RangeClass::Bounded) {
    // No closed-form constant; normalize by the trapezoid rule and flag.
    std::vector<double> sq(values.size());
    kernels::mul(values, values, sq);
    const double norm = std::sqrt(kernels::trapezoid(sq, grid.h()));
    if (!(norm > 0.0)) throw GridError("cannot normalize a vanishing state");
    kernels::scal(1.0 / norm, values);
    WaveFunction wf(grid, std::move(values), n);
    wf.mark_formal();
    return wf;
  }
  kernels::scal(normalization_constant(n, rc), values);
  return WaveFunction(grid, std::move(values), n);
}

}  // namespace

WaveFunction eigenfunction(const MassSpec& spec, const MuMap& map, RangeClass rc,
                           int n, const Grid& grid) {
  if (n > kMaxHermiteDegree) throw DegreeError("Hermite degree above supported cap 64");
  check_grid_in_domain(spec, grid);
  const EigenBasisData data = eigen_basis_data(spec, map, grid);
  std::vector<double> values = hermite_array(n, data.mu);
  kernels::mul(values, data.envelope, values);
  return finish_state(grid, std::move(values), n, rc);
}

std::vector<WaveFunction> eigenfunction_family(const MassSpec& spec, const MuMap& map,
                                               RangeClass rc, int n_max, const Grid& grid) {
  if (n_max < 0) throw InvalidParamError("n_max must be non-negative");
  if (n_max > kMaxHermiteDegree) throw DegreeError("Hermite degree above supported cap 64");
  check_grid_in_domain(spec, grid);
  const EigenBasisData data = eigen_basis_data(spec, map, grid);
  const std::size_t len = data.mu.size();

  std::vector<WaveFunction> family;
  family.reserve(n_max + 1);
  std::vector<double> hkm1(len, 1.0), hk(len), next(len), values(len);
  for (int n = 0; n <= n_max; ++n) {
    if (n == 1)
      for (std::size_t i = 0; i < len; ++i) hk[i] = 2.0 * data.mu[i];
    else if (n >= 2) {
      kernels::hermite_step(data.mu, hk, hkm1, 2.0 * (n - 1), next);
      std::swap(hkm1, hk);
      std::swap(hk, next);
    }
    const std::vector<double>& hn = (n == 0) ? hkm1 : hk;
    kernels::mul(hn, data.envelope, values);
    family.push_back(finish_state(grid, values, n, rc));
  }
  return family;
}

WaveFunction apply_lowering(const MassSpec& spec, const MuMap& map, const WaveFunction& wf) {
  check_grid_in_domain(spec, wf.grid());
  const Grid& grid = wf.grid();
  const auto mq = sample_mass_pow(spec, grid, -0.25);
  const auto mu = sample_mu(map, grid);
  auto re = ladder_component(wf.real_part(), mq, mu, grid.h(), +1.0);
  if (wf.is_real()) return WaveFunction(grid, std::move(re));
  auto im = ladder_component(wf.imag_part(), mq, mu, grid.h(), +1.0);
  return WaveFunction(grid, std::move(re), std::move(im));
}

WaveFunction apply_raising(const MassSpec& spec, const MuMap& map, const WaveFunction& wf) {
  check_grid_in_domain(spec, wf.grid());
  const Grid& grid = wf.grid();
  const auto mq = sample_mass_pow(spec, grid, -0.25);
  const auto mu = sample_mu(map, grid);
  auto re = ladder_component(wf.real_part(), mq, mu, grid.h(), -1.0);
  if (wf.is_real()) return WaveFunction(grid, std::move(re));
  auto im = ladder_component(wf.imag_part(), mq, mu, grid.h(), -1.0);
  return WaveFunction(grid, std::move(re), std::move(im));
}

WaveFunction apply_deformed_momentum(const MassSpec& spec, const WaveFunction& wf) {
  check_grid_in_domain(spec, wf.grid());
  const Grid& grid = wf.grid();
  const auto mq = sample_mass_pow(spec, grid, -0.25);
  const std::size_t n = static_cast<std::size_t>(grid.n);

  // pi f = -i m^{-1/4} (m^{-1/4} f)'; on components: Re(pi f) = +D Im f,
  // Im(pi f) = -D Re f, with D = m^{-1/4} d/dx m^{-1/4}.
  auto deformed_d = [&](std::span<const double> comp) {
    std::vector<double> g(n), d(n);
    kernels::mul(mq, comp, g);
    kernels::deriv5(g, grid.h(), d);
    kernels::mul(mq, d, d);
    return d;
  };

  std::vector<double> im_out = deformed_d(wf.real_part());
  kernels::scal(-1.0, im_out);
  if (wf.is_real()) {
    std::vector<double> re_out(n, 0.0);
    return WaveFunction(grid, std::move(re_out), std::move(im_out));
  }
  std::vector<double> re_out = deformed_d(wf.imag_part());
  return WaveFunction(grid, std::move(re_out), std::move(im_out));
}

double commutator_profile(const MassSpec& spec, double beta, double x) {
  const double m = spec.mass(x);  // also validates x against the domain
  // mu' is sqrt(m) by construction, so the leading term mu'/sqrt(m) is 1.
  if (beta == -0.5) return 1.0;
  const double m1 = spec.mass_d1(x);
  const double m2 = spec.mass_d2(x);
  const double r1 = m1 / m;
  return 1.0 - (2.0 * beta + 1.0) / (4.0 * m) * (m2 / m - 1.5 * r1 * r1);
}

WaveFunction apply_hamiltonian(const MassSpec& spec, const OrderingParams& /*ordering*/,
                               const std::function<double(double)>& potential,
                               const WaveFunction& wf) {
  check_grid_in_domain(spec, wf.grid());
  const Grid& grid = wf.grid();
  const int n = grid.n;
  const double h = grid.h();
  const double inv2h2 = 1.0 / (2.0 * h * h);

  // Midpoint weights w = 1/m; the two outer faces clamp the evaluation point
  // to the domain (those rows are boundary rows either way).
  std::vector<double> w(n + 1);
  const auto& dom = spec.domain();
  for (int i = 0; i <= n; ++i) {
    const double xm = std::clamp(grid.x_lo + (i - 0.5) * h, dom.lo, dom.hi);
    w[i] = 1.0 / spec.mass(xm);
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = potential(grid.x(i));

  auto apply_component = [&](std::span<const double> f) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
      const double fm = (i > 0) ? f[i - 1] : 0.0;      // Dirichlet outside
      const double fp = (i + 1 < n) ? f[i + 1] : 0.0;
      out[i] = (w[i] * (f[i] - fm) + w[i + 1] * (f[i] - fp)) * inv2h2 + v[i] * f[i];
    }
    return out;
  };

  auto re = apply_component(wf.real_part());
  if (wf.is_real()) return WaveFunction(grid, std::move(re));
  auto im = apply_component(wf.imag_part());
  return WaveFunction(grid, std::move(re), std::move(im));
}

}  // namespace gho

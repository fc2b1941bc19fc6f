// Ladder algebra, potentials, eigenfunctions and operator application.

#include <doctest.h>

#include <cmath>
#include <random>

#include "gho/kernels.hpp"
#include "gho/oscillator.hpp"
#include "gho/spectral.hpp"

using namespace gho;

namespace {

MassSpec catalog(MassKind kind, double a = 1.0, double q = 1.0) {
  Params p;
  if (kind != MassKind::Constant) p["a"] = a;
  if (kind == MassKind::LorentzSquare) p["q"] = q;
  return make_mass(kind, p);
}

struct System {
  MassSpec spec;
  MuMap map;
  RangeClass rc;
  Grid grid;
};

System full_line_system(MassKind kind, double a, int n = 2401) {
  System s{catalog(kind, a), {}, RangeClass::FullLine, {}};
  s.map = mu_map(s.spec);
  s.rc = classify_range(s.map);
  GridPolicy policy;
  policy.n = n;
  s.grid = make_auto_grid(s.spec, s.map, policy);
  return s;
}

std::function<double(double)> make_veff(const System& s, const OrderingParams& ord) {
  return [spec = s.spec, map = s.map, ord](double x) {
    return effective_potential(spec, ord, map, x);
  };
}

// libstdc++'s std::hermite trips -Wmaybe-uninitialized when inlined
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
[[gnu::noinline]] double std_hermite_ref(unsigned n, double t) {
  return std::hermite(n, t);
}
#pragma GCC diagnostic pop

double rel_l2_diff(const WaveFunction& a, const WaveFunction& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = a.real_part()[i] - b.real_part()[i];
    num += d * d;
    den += b.real_part()[i] * b.real_part()[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("ordering constants") {
  const OrderingParams o = gho_ordering();
  CHECK(o.alpha == doctest::Approx(-0.25));
  CHECK(o.beta == doctest::Approx(-0.5));
  CHECK(o.gamma == doctest::Approx(-0.25));
  CHECK(o.alpha + o.beta + o.gamma == doctest::Approx(-1.0));
  CHECK(o.alpha == o.gamma);
  CHECK_THROWS_AS(OrderingParams(0.0, 0.0, 0.0), InvalidParamError);
  CHECK_THROWS_AS(OrderingParams(-0.5, 0.0, -0.5 + 1e-6), InvalidParamError);
}

TEST_CASE("base potential is mu^2/2") {
  const MassSpec constant = catalog(MassKind::Constant);
  CHECK(base_potential(mu_map(constant), 2.0) == doctest::Approx(2.0));
  // exponential a=1: V = (2/a^2) e^{ax}
  const MuMap em = mu_map(catalog(MassKind::Exponential, 1.0));
  for (double x : {-1.0, 0.0, 0.7})
    CHECK(base_potential(em, x) == doctest::Approx(2.0 * std::exp(x)).epsilon(1e-14));
  // rational-square a=2 at x=0: mu = 0
  CHECK(base_potential(mu_map(catalog(MassKind::RationalSquare, 2.0)), 0.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("effective potential matches every printed closed form") {
  // Generic ordering-term evaluation against the per-mass closed forms; for
  // the exponential mass the correction is -(3 a^2/32) e^{-a x}, and so on.
  const OrderingParams ord = gho_ordering();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto check_mass = [&](const MassSpec& spec, double lo, double hi, auto&& closed_form) {
    const MuMap map = mu_map(spec);
    for (int i = 0; i < 100; ++i) {
      const double x = lo + (hi - lo) * unit(rng);
      const double generic = effective_potential(spec, ord, map, x);
      const double mu = map.mu(x);
      const double expect = 0.5 * mu * mu + closed_form(x);
      CAPTURE(spec.id());
      CAPTURE(x);
      CHECK(std::fabs(generic - expect) < 1e-8);
    }
  };

  const double a = 2.0;
  check_mass(catalog(MassKind::RationalSquare, a), -4.0, 4.0, [a](double x) {
    const double x2 = x * x;
    const double d = a + x2;
    return ((a - 1.0) / 2.0) * (3.0 * x2 * x2 + (4.0 - 2.0 * a) * x2 - a) / (d * d * d * d);
  });
  check_mass(catalog(MassKind::Exponential, 1.3), -3.0, 3.0,
             [](double x) { return -(3.0 * 1.3 * 1.3 / 32.0) * std::exp(-1.3 * x); });
  check_mass(catalog(MassKind::TanhShift, 1.0), -3.0, 3.0, [](double x) {
    const double e2 = std::exp(2.0 * x);
    return -(1.0 / 16.0) * (4.0 * e2 + 3.0) / (e2 * (e2 + 1.0));
  });
  check_mass(catalog(MassKind::PowerLaw, 2.0), 0.3, 3.0, [](double x) {
    return -(1.0 / 32.0) * 2.0 * (3.0 * 2.0 + 4.0) * std::pow(x, -4.0);
  });
  check_mass(catalog(MassKind::SechSquare, 1.0), -3.0, 3.0,
             [](double x) { return -(1.0 / 16.0) * (3.0 * std::cosh(2.0 * x) + 1.0); });
  check_mass(catalog(MassKind::LorentzSquare, 1.5, 2.0), -4.0, 4.0, [](double x) {
    const double a2 = 1.5 * 1.5;
    return -2.0 / (2.0 * a2) - x * x / a2;
  });

  // constant mass: V_eff = V = x^2/2 regardless of the ordering
  const MassSpec constant = catalog(MassKind::Constant);
  const MuMap cm = mu_map(constant);
  CHECK(effective_potential(constant, ord, cm, 1.0) == doctest::Approx(0.5));
  CHECK(effective_potential(constant, OrderingParams(0.0, -1.0, 0.0), cm, 1.0) ==
        doctest::Approx(0.5));
}

TEST_CASE("eigenvalues are n + 1/2") {
  CHECK(eigenvalue(0) == doctest::Approx(0.5));
  CHECK(eigenvalue(1) == doctest::Approx(1.5));
  CHECK(eigenvalue(10) == doctest::Approx(10.5));
  CHECK_THROWS_AS(eigenvalue(-1), InvalidParamError);
}

TEST_CASE("hermite recurrence against the standard library") {
  CHECK(hermite(0, 3.7) == doctest::Approx(1.0));
  CHECK(hermite(1, 0.9) == doctest::Approx(1.8));
  CHECK(hermite(2, 1.0) == doctest::Approx(2.0));  // 4 t^2 - 2
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = static_cast<int>(rng() % 20);
    const double t = dist(rng);
    const double ref = std_hermite_ref(static_cast<unsigned>(n), t);
    CHECK(hermite(n, t) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hermite(65, 0.0), DegreeError);

  std::vector<double> ts{-2.0, -0.5, 0.0, 1.0, 2.5};
  const auto vals = hermite_array(7, ts);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(vals[i] == doctest::Approx(hermite(7, ts[i])).epsilon(1e-13));
}

TEST_CASE("normalization constants") {
  CHECK(normalization_constant(0, RangeClass::FullLine) ==
        doctest::Approx(0.7511255444649425).epsilon(1e-14));  // pi^{-1/4}
  CHECK(normalization_constant(0, RangeClass::HalfLine) ==
        doctest::Approx(M_SQRT2 * 0.7511255444649425).epsilon(1e-14));
  CHECK(normalization_constant(2, RangeClass::FullLine) ==
        doctest::Approx(1.0 / std::sqrt(8.0 * std::sqrt(M_PI))).epsilon(1e-14));
  CHECK_THROWS_AS(normalization_constant(1, RangeClass::Bounded), BoundedRangeError);
}

TEST_CASE("eigenfunction closed forms on the grid") {
  // constant mass ground state: pi^{-1/4} e^{-x^2/2}
  const System cs = full_line_system(MassKind::Constant, 1.0);
  const WaveFunction psi0 = eigenfunction(cs.spec, cs.map, cs.rc, 0, cs.grid);
  for (int i : {0, 600, 1200, 1800, 2400}) {
    const double x = cs.grid.x(i);
    CHECK(psi0.real_part()[i] ==
          doctest::Approx(0.7511255444649425 * std::exp(-0.5 * x * x)).epsilon(1e-12));
  }
  CHECK(psi0.label() == 0);
  CHECK_FALSE(psi0.formal());

  // rational-square: m^{1/4} = sqrt((a+x^2)/(1+x^2)) envelope
  const System rs = full_line_system(MassKind::RationalSquare, 2.0);
  const WaveFunction r3 = eigenfunction(rs.spec, rs.map, rs.rc, 3, rs.grid);
  for (int i : {100, 1200, 2000}) {
    const double x = rs.grid.x(i);
    const double mu = x + std::atan(x);
    const double expect = normalization_constant(3, RangeClass::FullLine) *
                          std::sqrt((2.0 + x * x) / (1.0 + x * x)) *
                          std::exp(-0.5 * mu * mu) * hermite(3, mu);
    CHECK(r3.real_part()[i] == doctest::Approx(expect).epsilon(1e-12));
  }

  // exponential a=1 half-line ground state: N0 e^{x/4} e^{-mu^2/2}
  const MassSpec es = catalog(MassKind::Exponential, 1.0);
  const MuMap em = mu_map(es);
  const Grid eg(-16.0, 2.0 * std::log(4.0), 2401);
  const WaveFunction e0 = eigenfunction(es, em, RangeClass::HalfLine, 0, eg);
  for (int i : {200, 1200, 2200}) {
    const double x = eg.x(i);
    const double mu = 2.0 * std::exp(0.5 * x);
    const double expect = normalization_constant(0, RangeClass::HalfLine) *
                          std::exp(0.25 * x) * std::exp(-0.5 * mu * mu);
    CHECK(e0.real_part()[i] == doctest::Approx(expect).epsilon(1e-12));
  }

  // trapezoid norm of a tanh-shift state is 1 (closed-form constants)
  const MassSpec ts = catalog(MassKind::TanhShift, 1.0);
  const MuMap tm = mu_map(ts);
  const Grid tg(-14.0, 5.0, 4801);
  const WaveFunction t3 = eigenfunction(ts, tm, RangeClass::HalfLine, 3, tg);
  std::vector<double> sq(tg.n);
  kernels::mul(t3.real_part(), t3.real_part(), sq);
  CHECK(kernels::trapezoid(sq, tg.h()) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(eigenfunction(cs.spec, cs.map, cs.rc, 65, cs.grid), DegreeError);
  CHECK_THROWS_AS(eigenfunction(es, em, RangeClass::HalfLine, 0, Grid(-40.0, 1e8, 101)),
                  OutOfDomainError);
}

TEST_CASE("eigenfunction_family matches single construction") {
  const System rs = full_line_system(MassKind::RationalSquare, 0.5, 1201);
  const auto family = eigenfunction_family(rs.spec, rs.map, rs.rc, 6, rs.grid);
  REQUIRE(family.size() == 7);
  for (int n : {0, 1, 4, 6}) {
    const WaveFunction single = eigenfunction(rs.spec, rs.map, rs.rc, n, rs.grid);
    for (int i : {7, 600, 1100})
      CHECK(family[n].real_part()[i] ==
            doctest::Approx(single.real_part()[i]).epsilon(1e-13));
  }
}

TEST_CASE("lowering annihilates the ground state") {
  for (auto [kind, a] : {std::pair{MassKind::Constant, 1.0},
                         std::pair{MassKind::RationalSquare, 2.0},
                         std::pair{MassKind::RationalSquare, 0.5}}) {
    const System s = full_line_system(kind, a);
    const WaveFunction psi0 = eigenfunction(s.spec, s.map, s.rc, 0, s.grid);
    const WaveFunction low = apply_lowering(s.spec, s.map, psi0);
    const std::span<const double> v = low.real_part();
    const double interior_max = kernels::max_abs(v.subspan(2, v.size() - 4));
    CAPTURE(s.spec.id());
    CHECK(interior_max < 1e-6);
    CHECK(interior_max / kernels::max_abs(psi0.real_part()) < 1e-5);
  }
}

TEST_CASE("raising the ground state gives the first excited state") {
  for (auto [kind, a] : {std::pair{MassKind::Constant, 1.0},
                         std::pair{MassKind::RationalSquare, 2.0}}) {
    const System s = full_line_system(kind, a);
    const WaveFunction psi0 = eigenfunction(s.spec, s.map, s.rc, 0, s.grid);
    const WaveFunction psi1 = eigenfunction(s.spec, s.map, s.rc, 1, s.grid);
    const WaveFunction up = apply_raising(s.spec, s.map, psi0);
    double max_diff = 0.0;
    for (int i = 2; i < s.grid.n - 2; ++i)
      max_diff = std::max(max_diff, std::fabs(up.real_part()[i] - psi1.real_part()[i]));
    CAPTURE(s.spec.id());
    CHECK(max_diff < 1e-6);
  }
}

TEST_CASE("constant-mass lowering maps psi_1 to psi_0") {
  const System s = full_line_system(MassKind::Constant, 1.0);
  const WaveFunction psi1 = eigenfunction(s.spec, s.map, s.rc, 1, s.grid);
  const WaveFunction psi0 = eigenfunction(s.spec, s.map, s.rc, 0, s.grid);
  const WaveFunction low = apply_lowering(s.spec, s.map, psi1);
  CHECK(rel_l2_diff(low, psi0) < 1e-6);
}

TEST_CASE("ladder normalization: lowering scales by sqrt(n)") {
  const System s = full_line_system(MassKind::RationalSquare, 2.0);
  const auto family = eigenfunction_family(s.spec, s.map, s.rc, 6, s.grid);
  for (int n = 1; n <= 6; ++n) {
    const WaveFunction low = apply_lowering(s.spec, s.map, family[n]);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < s.grid.n; ++i) {
      const double d = low.real_part()[i] - std::sqrt(n) * family[n - 1].real_part()[i];
      num += d * d;
      den += family[n].real_part()[i] * family[n].real_part()[i];
    }
    CAPTURE(n);
    CHECK(std::sqrt(num) < 1e-4 * std::sqrt(den));
  }
}

TEST_CASE("commutator profile") {
  // closure at beta = -1/2, exactly
  for (auto [kind, a] : {std::pair{MassKind::Constant, 1.0},
                         std::pair{MassKind::RationalSquare, 2.0},
                         std::pair{MassKind::Exponential, 1.0},
                         std::pair{MassKind::TanhShift, 1.0},
                         std::pair{MassKind::SechSquare, 1.0}}) {
    const MassSpec spec = catalog(kind, a);
    for (double x : {-2.0, 0.0, 1.3})
      CHECK(commutator_profile(spec, -0.5, x) == 1.0);
  }
  // constant mass closes for every ordering
  const MassSpec constant = catalog(MassKind::Constant);
  for (double beta : {-1.0, 0.0, 0.7})
    CHECK(commutator_profile(constant, beta, 2.0) == doctest::Approx(1.0));
  // exponential mass at beta = 0: 1 + e^{-ax}/8, so 1.125 at the origin
  const MassSpec expm = catalog(MassKind::Exponential, 1.0);
  CHECK(commutator_profile(expm, 0.0, 0.0) == doctest::Approx(1.125).epsilon(1e-14));
  CHECK(std::fabs(commutator_profile(expm, 0.0, -1.0) - 1.0) > 0.05);
}

TEST_CASE("hamiltonian application: eigenstates and factorization") {
  const OrderingParams ord = gho_ordering();
  const System cs = full_line_system(MassKind::Constant, 1.0, 4801);

  // H psi_2 = 2.5 psi_2 for the plain oscillator
  const WaveFunction psi2 = eigenfunction(cs.spec, cs.map, cs.rc, 2, cs.grid);
  const WaveFunction h2 = apply_hamiltonian(cs.spec, ord, make_veff(cs, ord), psi2);
  double num = 0.0, den = 0.0;
  for (int i = 2; i < cs.grid.n - 2; ++i) {
    const double d = h2.real_part()[i] - 2.5 * psi2.real_part()[i];
    num += d * d;
    den += psi2.real_part()[i] * psi2.real_part()[i];
  }
  CHECK(std::sqrt(num / den) < 1e-4);

  // (A+ A + 1/2) psi_n agrees with the flux-form H psi_n within the stencil
  // mismatch (the flux form is second order, so the gap scales like h^2).
  const System rs = full_line_system(MassKind::RationalSquare, 2.0);
  const WaveFunction f2 = eigenfunction(rs.spec, rs.map, rs.rc, 2, rs.grid);
  const WaveFunction fact =
      apply_raising(rs.spec, rs.map, apply_lowering(rs.spec, rs.map, f2));
  const WaveFunction hf = apply_hamiltonian(rs.spec, ord, make_veff(rs, ord), f2);
  double max_gap = 0.0;
  for (int i = 2; i < rs.grid.n - 2; ++i) {
    const double lhs = fact.real_part()[i] + 0.5 * f2.real_part()[i];
    max_gap = std::max(max_gap, std::fabs(lhs - hf.real_part()[i]));
  }
  CHECK(max_gap < 5e-4);  // measured 1.2e-4 at this resolution
}

TEST_CASE("commutator and number operator applied numerically") {
  const System rs = full_line_system(MassKind::RationalSquare, 2.0);
  const auto family = eigenfunction_family(rs.spec, rs.map, rs.rc, 7, rs.grid);
  for (int n = 0; n <= 6; ++n) {
    const WaveFunction& psi = family[n];
    // [A, A+] psi = psi
    const WaveFunction aup =
        apply_lowering(rs.spec, rs.map, apply_raising(rs.spec, rs.map, psi));
    const WaveFunction upa =
        apply_raising(rs.spec, rs.map, apply_lowering(rs.spec, rs.map, psi));
    double num = 0.0, den = 0.0;
    for (int i = 4; i < rs.grid.n - 4; ++i) {
      const double comm = aup.real_part()[i] - upa.real_part()[i];
      const double d = comm - psi.real_part()[i];
      num += d * d;
      den += psi.real_part()[i] * psi.real_part()[i];
    }
    CAPTURE(n);
    CHECK(std::sqrt(num / den) < 1e-4);

    // N (A+ psi_n) = (n+1) (A+ psi_n)
    const WaveFunction up = apply_raising(rs.spec, rs.map, psi);
    const WaveFunction nup =
        apply_raising(rs.spec, rs.map, apply_lowering(rs.spec, rs.map, up));
    num = den = 0.0;
    for (int i = 4; i < rs.grid.n - 4; ++i) {
      const double d = nup.real_part()[i] - (n + 1.0) * up.real_part()[i];
      num += d * d;
      den += up.real_part()[i] * up.real_part()[i];
    }
    CHECK(std::sqrt(num / den) < 1e-3);
  }
}

TEST_CASE("constant-mass collapse reproduces the plain oscillator") {
  const System s = full_line_system(MassKind::Constant, 1.0);
  CHECK(s.map.mu(1.7) == doctest::Approx(1.7).epsilon(1e-15));
  const OrderingParams ord = gho_ordering();
  for (double x : {-3.0, 0.4, 2.2})
    CHECK(std::fabs(effective_potential(s.spec, ord, s.map, x) - 0.5 * x * x) < 1e-10);
  for (int n : {0, 1, 5}) {
    const WaveFunction psi = eigenfunction(s.spec, s.map, s.rc, n, s.grid);
    for (int i : {300, 1200, 2000}) {
      const double x = s.grid.x(i);
      const double expect = normalization_constant(n, RangeClass::FullLine) *
                            std::exp(-0.5 * x * x) * hermite(n, x);
      CHECK(psi.real_part()[i] == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

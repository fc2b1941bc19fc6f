// Mass catalog, mu transform and range classification.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "gho/mass.hpp"
#include "gho/grid.hpp"
#include "gho/quadrature.hpp"

using namespace gho;

namespace {

MassSpec catalog(MassKind kind, double a = 1.0, double q = 1.0) {
  Params p;
  if (kind != MassKind::Constant) p["a"] = a;
  if (kind == MassKind::LorentzSquare) p["q"] = q;
  return make_mass(kind, p);
}

}  // namespace

TEST_CASE("catalog evaluation matches the closed forms") {
  // rational-square at a=2: m(0) = ((2+0)/(1+0))^2 = 4
  CHECK(evaluate_mass(catalog(MassKind::RationalSquare, 2.0), 0.0) == doctest::Approx(4.0));
  // identity limits
  CHECK(evaluate_mass(catalog(MassKind::Exponential, 0.0), 7.0) == doctest::Approx(1.0));
  CHECK(evaluate_mass(catalog(MassKind::TanhShift, 1.0), 0.0) == doctest::Approx(1.0));
  CHECK(evaluate_mass(catalog(MassKind::Constant), 0.0) == doctest::Approx(1.0));
  CHECK(evaluate_mass(catalog(MassKind::Constant), 5.0) == doctest::Approx(1.0));
  // rational-square collapses to the constant mass at a=1
  const MassSpec rs1 = catalog(MassKind::RationalSquare, 1.0);
  for (double x : {-3.0, -0.5, 0.0, 1.0, 7.5})
    CHECK(evaluate_mass(rs1, x) == doctest::Approx(1.0).epsilon(1e-14));
  // power-law and the bounded kinds
  CHECK(evaluate_mass(catalog(MassKind::PowerLaw, 2.0), 3.0) == doctest::Approx(9.0));
  CHECK(evaluate_mass(catalog(MassKind::SechSquare, 1.0), 0.0) == doctest::Approx(1.0));
  CHECK(evaluate_mass(catalog(MassKind::LorentzSquare, 2.0, 1.0), 0.0) == doctest::Approx(4.0));
}

TEST_CASE("parameter and domain validation") {
  CHECK_THROWS_AS(make_mass(MassKind::RationalSquare), MissingParamError);
  CHECK_THROWS_AS(make_mass(MassKind::LorentzSquare, {{"a", 1.0}}), MissingParamError);
  CHECK_THROWS_AS(make_mass(MassKind::LorentzSquare, {{"a", 1.0}, {"q", -1.0}}),
                  InvalidParamError);
  CHECK_THROWS_AS(make_mass(MassKind::RationalSquare, {{"a", -1.0}}), InvalidParamError);
  CHECK_THROWS_AS(make_mass(MassKind::SechSquare, {{"a", -2.0}}), InvalidParamError);
  // power-law: singular at 0 for negative exponents, domain must avoid x < 0
  CHECK_THROWS_AS(make_mass(MassKind::PowerLaw, {{"a", -1.0}}, Domain::finite(0.0, 10.0)),
                  SingularDomainError);
  CHECK_THROWS_AS(make_mass(MassKind::PowerLaw, {{"a", 2.0}}, Domain::finite(-1.0, 10.0)),
                  SingularDomainError);
  const MassSpec pl = catalog(MassKind::PowerLaw, 2.0);
  CHECK(pl.domain().lo == doctest::Approx(1e-6));
  CHECK_THROWS_AS(evaluate_mass(pl, -1.0), OutOfDomainError);
  // the exponential mass carries the orthogonality warning
  CHECK(catalog(MassKind::Exponential, 1.0).warnings().size() == 1);
  CHECK(catalog(MassKind::Exponential, 0.0).warnings().empty());
}

TEST_CASE("custom profiles: table validation and positivity") {
  CustomProfile tiny;
  tiny.table.emplace(std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 1, 1, 1});
  CHECK_THROWS_AS(make_mass(MassKind::Custom, {}, Domain::real_line(), tiny),
                  InvalidParamError);

  // a dip through zero must be rejected with the offending abscissa
  std::vector<double> xs, ms;
  for (int i = 0; i < 64; ++i) {
    const double x = -2.0 + 4.0 * i / 63.0;
    xs.push_back(x);
    ms.push_back(1.0 - std::exp(-x * x * 20.0) * 1.5);  // negative near x = 0
  }
  CustomProfile dipped;
  dipped.table.emplace(xs, ms);
  try {
    make_mass(MassKind::Custom, {}, Domain::real_line(), dipped);
    FAIL("expected NonPositiveMassError");
  } catch (const NonPositiveMassError& e) {
    CHECK(std::fabs(e.x) < 0.5);  // reported abscissa sits inside the dip
  }

  CustomProfile rule;
  rule.rule = [](double) { return 2.0; };
  const MassSpec spec = make_mass(MassKind::Custom, {}, Domain::finite(-5.0, 5.0), rule);
  CHECK(evaluate_mass(spec, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("mu closed forms") {
  // constant: mu(x) = x
  CHECK(mu_map(catalog(MassKind::Constant)).mu(1.5) == doctest::Approx(1.5));
  // rational-square a=2: mu(1) = 1 + arctan 1 = 1 + pi/4
  CHECK(mu_map(catalog(MassKind::RationalSquare, 2.0)).mu(1.0) ==
        doctest::Approx(1.0 + M_PI / 4).epsilon(1e-15));
  // exponential a=2: mu(0) = (2/2) e^0 = 1
  CHECK(mu_map(catalog(MassKind::Exponential, 2.0)).mu(0.0) == doctest::Approx(1.0));
  // power-law a=2: mu(x) = x^2/2
  CHECK(mu_map(catalog(MassKind::PowerLaw, 2.0)).mu(3.0) == doctest::Approx(4.5));
  // sech-square a=1: mu(0) = 2 arctan 1 = pi/2
  CHECK(mu_map(catalog(MassKind::SechSquare, 1.0)).mu(0.0) == doctest::Approx(M_PI / 2));
  // lorentz-square a=1,q=1: odd arctan profile
  CHECK(mu_map(catalog(MassKind::LorentzSquare, 1.0, 1.0)).mu(1.0) ==
        doctest::Approx(M_PI / 4));
}

TEST_CASE("mu is strictly increasing with derivative sqrt(m)") {
  std::mt19937_64 rng(123);
  for (MassKind kind : {MassKind::Constant, MassKind::RationalSquare, MassKind::Exponential,
                        MassKind::TanhShift, MassKind::PowerLaw, MassKind::SechSquare,
                        MassKind::LorentzSquare}) {
    const MassSpec spec = catalog(kind, kind == MassKind::RationalSquare ? 2.0 : 1.0);
    const MuMap map = mu_map(spec);
    const double lo = (kind == MassKind::PowerLaw) ? 0.5 : -6.0;
    const double hi = 6.0;
    std::uniform_real_distribution<double> dist(lo, hi);
    for (int i = 0; i < 100; ++i) {
      double x1 = dist(rng), x2 = dist(rng);
      if (x1 > x2) std::swap(x1, x2);
      if (x2 - x1 < 1e-10) continue;
      CAPTURE(mass_kind_name(kind));
      CHECK(map.mu(x1) < map.mu(x2));
      // central difference of mu against the exact derivative sqrt(m)
      const double h = 1e-5;
      const double d = (map.mu(x1 + h) - map.mu(x1 - h)) / (2 * h);
      CHECK(std::fabs(d - map.dmu(x1)) < 1e-6);
      CHECK(map.dmu(x1) * map.dmu(x1) == doctest::Approx(spec.mass(x1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("analytic mu agrees with quadrature of sqrt(m) from a sampled table") {
  // For each catalog kind, rebuild the mass as a sampled custom profile and
  // integrate; the routes must agree once the integration origins match.
  struct Probe {
    MassKind kind;
    double a, lo, hi;
  };
  for (const Probe& p : {Probe{MassKind::RationalSquare, 2.0, -3.0, 3.0},
                         Probe{MassKind::Exponential, 1.0, -3.0, 3.0},
                         Probe{MassKind::TanhShift, 1.0, -3.0, 3.0},
                         Probe{MassKind::PowerLaw, 2.0, 0.25, 3.0},
                         Probe{MassKind::SechSquare, 1.0, -3.0, 3.0},
                         Probe{MassKind::LorentzSquare, 1.5, -3.0, 3.0}}) {
    const MassSpec exact = catalog(p.kind, p.a, 1.0);
    const MuMap analytic = mu_map(exact);

    std::vector<double> xs, ms;
    const int samples = 3000;
    for (int i = 0; i < samples; ++i) {
      const double x = p.lo + (p.hi - p.lo) * i / (samples - 1.0);
      xs.push_back(x);
      ms.push_back(exact.mass(x));
    }
    CustomProfile profile;
    profile.table.emplace(std::move(xs), std::move(ms));
    const MassSpec sampled = make_mass(MassKind::Custom, {}, Domain::real_line(), profile);
    const double origin = 0.5 * (p.lo + p.hi);
    const MuMap quad = mu_map(sampled, origin);
    CHECK(quad.analytic == false);
    CHECK(quad.mu(origin) == doctest::Approx(0.0));

    for (double x : {p.lo + 0.1, origin + 0.7, p.hi - 0.1}) {
      CAPTURE(mass_kind_name(p.kind)); CAPTURE(x);
      const double shifted = quad.mu(x) + analytic.mu(origin);
      CHECK(std::fabs(shifted - analytic.mu(x)) < 1e-7);
    }
  }
}

TEST_CASE("quadrature route reproduces the exponential antiderivative near 1") {
  // m = e^{2x} tabulated from far left; the integral from the left edge up to
  // x = 0 approaches the closed form (2/a) e^{(a/2) x} = 1.
  std::vector<double> xs, ms;
  const int samples = 4400;
  for (int i = 0; i < samples; ++i) {
    const double x = -20.0 + 22.0 * i / (samples - 1.0);
    xs.push_back(x);
    ms.push_back(std::exp(2.0 * x));
  }
  CustomProfile profile;
  profile.table.emplace(std::move(xs), std::move(ms));
  const MassSpec sampled = make_mass(MassKind::Custom, {}, Domain::real_line(), profile);
  const MuMap quad = mu_map(sampled, -20.0);
  CHECK(std::fabs(quad.mu(0.0) - 1.0) < 1e-8);
}

TEST_CASE("limit collapse to the identity transform") {
  for (const MassSpec& spec : {catalog(MassKind::RationalSquare, 1.0),
                               catalog(MassKind::Exponential, 0.0),
                               catalog(MassKind::TanhShift, 0.0)}) {
    const MuMap map = mu_map(spec);
    for (double x : {-4.0, -1.0, 0.0, 0.3, 2.0, 5.0}) {
      CAPTURE(spec.id()); CAPTURE(x);
      CHECK(std::fabs(map.mu(x) - x) < 1e-12);
    }
  }
}

TEST_CASE("range classification and admissibility") {
  auto rc = [](const MassSpec& s) { return classify_range(mu_map(s)); };
  CHECK(rc(catalog(MassKind::Constant)) == RangeClass::FullLine);
  CHECK(rc(catalog(MassKind::RationalSquare, 2.0)) == RangeClass::FullLine);
  CHECK(rc(catalog(MassKind::RationalSquare, 0.5)) == RangeClass::FullLine);
  CHECK(rc(catalog(MassKind::Exponential, 1.0)) == RangeClass::HalfLine);
  CHECK(rc(catalog(MassKind::TanhShift, 1.0)) == RangeClass::HalfLine);
  CHECK(rc(catalog(MassKind::PowerLaw, 2.0)) == RangeClass::HalfLine);
  CHECK(rc(catalog(MassKind::SechSquare, 1.0)) == RangeClass::Bounded);
  CHECK(rc(catalog(MassKind::LorentzSquare, 1.0, 1.0)) == RangeClass::Bounded);
  // a mirrored half-line (exponential a<0) does not fit the half-line tag
  CHECK(rc(catalog(MassKind::Exponential, -1.0)) == RangeClass::Bounded);

  CHECK(admissible_for_orthonormal_family(RangeClass::FullLine));
  CHECK_FALSE(admissible_for_orthonormal_family(RangeClass::HalfLine));
  CHECK_FALSE(admissible_for_orthonormal_family(RangeClass::Bounded));
}

TEST_CASE("csv profile reader") {
  const char* path = "test_profile_ok.csv";
  {
    std::ofstream out(path);
    out.precision(17);
    out << "x,m\n";
    for (int i = 0; i < 32; ++i) {
      const double x = -1.0 + 2.0 * i / 31.0;
      out << x << "," << (1.0 + x * x) << "\n";
    }
  }
  const MassSpec spec = load_custom_profile_csv(path);
  CHECK(spec.kind() == MassKind::Custom);
  CHECK(evaluate_mass(spec, 0.5) == doctest::Approx(1.25).epsilon(1e-10));
  std::remove(path);

  const char* bad_header = "test_profile_bad1.csv";
  {
    std::ofstream out(bad_header);
    out << "a,b\n0,1\n1,1\n";
  }
  CHECK_THROWS_AS(load_custom_profile_csv(bad_header), InvalidParamError);
  std::remove(bad_header);

  const char* not_increasing = "test_profile_bad2.csv";
  {
    std::ofstream out(not_increasing);
    out << "x,m\n";
    for (int i = 0; i < 20; ++i) out << (i == 7 ? 99.0 : i * 1.0) << ",1\n";
  }
  CHECK_THROWS_AS(load_custom_profile_csv(not_increasing), InvalidParamError);
  std::remove(not_increasing);

  CHECK_THROWS_AS(load_custom_profile_csv("does_not_exist.csv"), InvalidParamError);
}

TEST_CASE("adaptive quadrature meets its tolerance budget") {
  const double v1 =
      integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(std::fabs(v1 - std::sqrt(M_PI)) < 1e-11);
  const double v2 =
      integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-12);
  CHECK(std::fabs(v2 - M_PI / 4) < 1e-11);
  CHECK(integrate_signed([](double) { return 1.0; }, 2.0, -1.0, 1e-12) ==
        doctest::Approx(-3.0));
  // subdivision budget exhausted before the tolerance
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(40.0 * x * x); },
                                     0.0, 20.0, 1e-14, 2),
                  QuadratureError);
}

TEST_CASE("grids below the stencil margin are rejected") {
  CHECK_THROWS_AS(Grid(-1.0, 1.0, 5), GridError);
  CHECK_THROWS_AS(Grid(1.0, -1.0, 101), GridError);
}

#pragma once

// Position-dependent mass profiles m(x) > 0 and the transform
// mu(x) = integral of sqrt(m), whose range decides whether the oscillator
// eigenfamily is a genuine orthonormal basis.
//
// Natural units throughout: hbar = m0 = 1, m(x) dimensionless.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gho/errors.hpp"
#include "gho/interp.hpp"

namespace gho {

enum class MassKind {
  Constant,       // m = 1
  RationalSquare, // m = ((a+x^2)/(1+x^2))^2, a > 0
  Exponential,    // m = e^{a x}
  TanhShift,      // m = 1 + tanh(a x)
  PowerLaw,       // m = x^a on x > 0
  SechSquare,     // m = sech^2(a x), a > 0
  LorentzSquare,  // m = a^2/(q+x^2)^2, q > 0
  Custom,
};

const char* mass_kind_name(MassKind k);
std::optional<MassKind> mass_kind_from_name(const std::string& name);

/// Working stand-in for a conceptually infinite domain bound.
inline constexpr double kInfiniteBound = 1e6;

struct Domain {
  double lo = -kInfiniteBound;
  double hi = kInfiniteBound;
  bool lo_infinite = true;
  bool hi_infinite = true;

  static Domain real_line() { return {}; }
  static Domain finite(double lo, double hi) { return {lo, hi, false, false}; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Custom profile: either an owned evaluation rule or a sampled table
/// (interpolated by local cubics).
struct CustomProfile {
  std::function<double(double)> rule;  // used when table is absent
  std::optional<CubicTable> table;

  double operator()(double x) const { return table ? (*table)(x) : rule(x); }
};

using Params = std::map<std::string, double>;

class MassSpec {
 public:
  MassKind kind() const { return kind_; }
  const Params& params() const { return params_; }
  double param(const std::string& name) const;
  const Domain& domain() const { return domain_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// m(x); throws OutOfDomainError outside the domain.
  double mass(double x) const;

  /// First and second derivatives of m: analytic for catalog kinds,
  /// 5-point stencils (h = 1e-4 * max(1,|x|)) for Custom.
  double mass_d1(double x) const;
  double mass_d2(double x) const;

  bool is_custom() const { return kind_ == MassKind::Custom; }

  /// "kind(a=...,q=...)" identifier used in reports.
  std::string id() const;

  friend MassSpec make_mass(MassKind, const Params&, const Domain&,
                            std::optional<CustomProfile>);

 private:
  MassSpec() = default;
  double mass_unchecked(double x) const;

  MassKind kind_ = MassKind::Constant;
  Params params_;
  Domain domain_;
  std::shared_ptr<const CustomProfile> custom_;
  std::vector<std::string> warnings_;
};

/// Validates parameters, domain and positivity (sampled at >= 1024 points).
MassSpec make_mass(MassKind kind, const Params& params = {},
                   const Domain& domain = Domain::real_line(),
                   std::optional<CustomProfile> custom = {});

/// m(x) per the catalog closed form or the custom profile.
double evaluate_mass(const MassSpec& spec, double x);

/// Reads a two-column CSV "x,m" (header required, strictly increasing x)
/// into a Custom mass over the table's extent. Extra columns are ignored.
MassSpec load_custom_profile_csv(const std::string& path);

// ---------------------------------------------------------------------------

struct MuMap {
  std::function<double(double)> mu;   // x -> mu(x)
  std::function<double(double)> dmu;  // x -> sqrt(m(x)), the exact derivative
  double mu_min = 0.0;                // mu at the left domain edge
  double mu_max = 0.0;                // mu at the right domain edge
  bool analytic = false;              // catalog closed form
  double integration_origin = 0.0;    // mu(origin) = 0 for the Custom path
};

/// The transform mu(x) = integral of sqrt(m). Catalog kinds use their printed
/// antiderivatives (fixed integration constants); Custom integrates
/// adaptively from `origin` (absolute tolerance 1e-10), so mu(origin) = 0.
/// For catalog kinds `origin` is ignored.
MuMap mu_map(const MassSpec& spec, double origin = 0.0);

enum class RangeClass { FullLine, HalfLine, Bounded };

const char* range_class_name(RangeClass rc);

/// |mu| at a domain edge beyond this counts as infinite.
inline constexpr double kEffectivelyInfiniteMu = 25.0;
/// |mu_min| below this counts as zero (quadrature noise).
inline constexpr double kHalfLineZeroTol = 1e-8;

RangeClass classify_range(const MuMap& map,
                          double infinite_threshold = kEffectivelyInfiniteMu,
                          double zero_tol = kHalfLineZeroTol);

/// Orthogonality of the eigenfamily needs mu to sweep the whole real line.
bool admissible_for_orthonormal_family(RangeClass rc);

}  // namespace gho

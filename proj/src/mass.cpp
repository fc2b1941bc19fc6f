#include "gho/mass.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gho/quadrature.hpp"

namespace gho {

namespace {

constexpr double kCustomQuadTol = 1e-10;
constexpr int kPositivitySamples = 1024;
constexpr std::size_t kMinTablePoints = 16;

double require_param(const Params& p, const char* name) {
  auto it = p.find(name);
  if (it == p.end()) throw MissingParamError(name);
  return it->second;
}

// Conceptually infinite sides are probed for positivity out to a finite
// window only: far beyond every grid we ever build, but short of the range
// where the exponential-family profiles underflow to zero in double.
double positivity_probe_half_width(MassKind kind, const Params& params) {
  switch (kind) {
    case MassKind::Exponential:
    case MassKind::TanhShift:
    case MassKind::SechSquare: {
      const double a = std::fabs(params.at("a"));
      return a > 0.0 ? std::min(kInfiniteBound, 32.0 / a) : 64.0;
    }
    default:
      return 64.0;
  }
}

}  // namespace

const char* mass_kind_name(MassKind k) {
  switch (k) {
    case MassKind::Constant: return "constant";
    case MassKind::RationalSquare: return "rational-square";
    case MassKind::Exponential: return "exponential";
    case MassKind::TanhShift: return "tanh-shift";
    case MassKind::PowerLaw: return "power-law";
    case MassKind::SechSquare: return "sech-square";
    case MassKind::LorentzSquare: return "lorentz-square";
    case MassKind::Custom: return "custom";
  }
  return "?";
}

std::optional<MassKind> mass_kind_from_name(const std::string& name) {
  for (MassKind k : {MassKind::Constant, MassKind::RationalSquare, MassKind::Exponential,
                     MassKind::TanhShift, MassKind::PowerLaw, MassKind::SechSquare,
                     MassKind::LorentzSquare, MassKind::Custom})
    if (name == mass_kind_name(k)) return k;
  return std::nullopt;
}

double MassSpec::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw MissingParamError(name);
  return it->second;
}

double MassSpec::mass_unchecked(double x) const {
  switch (kind_) {
    case MassKind::Constant:
      return 1.0;
    case MassKind::RationalSquare: {
      const double a = params_.at("a");
      const double s = (a + x * x) / (1.0 + x * x);
      return s * s;
    }
    case MassKind::Exponential:
      return std::exp(params_.at("a") * x);
    case MassKind::TanhShift:
      // 1 + tanh(ax) in the cancellation-free form 2/(1 + e^{-2ax}); plain
      // tanh rounds to -1 beyond |ax| ~ 19 and would report a zero mass.
      return 2.0 / (1.0 + std::exp(-2.0 * params_.at("a") * x));
    case MassKind::PowerLaw:
      return std::pow(x, params_.at("a"));
    case MassKind::SechSquare: {
      const double c = std::cosh(params_.at("a") * x);
      return 1.0 / (c * c);
    }
    case MassKind::LorentzSquare: {
      const double a = params_.at("a");
      const double q = params_.at("q");
      const double d = q + x * x;
      return a * a / (d * d);
    }
    case MassKind::Custom:
      return (*custom_)(x);
  }
  return 1.0;
}

double MassSpec::mass(double x) const {
  if (!domain_.contains(x)) throw OutOfDomainError(x);
  return mass_unchecked(x);
}

double MassSpec::mass_d1(double x) const {
  if (!domain_.contains(x)) throw OutOfDomainError(x);
  switch (kind_) {
    case MassKind::Constant:
      return 0.0;
    case MassKind::RationalSquare: {
      const double a = params_.at("a");
      const double u = 1.0 + x * x;
      const double s = (a + x * x) / u;
      const double s1 = 2.0 * x * (1.0 - a) / (u * u);
      return 2.0 * s * s1;
    }
    case MassKind::Exponential: {
      const double a = params_.at("a");
      return a * std::exp(a * x);
    }
    case MassKind::TanhShift: {
      const double a = params_.at("a");
      const double m = mass_unchecked(x);
      return a * m * (2.0 - m);  // a sech^2(ax) = a m (2 - m)
    }
    case MassKind::PowerLaw: {
      const double a = params_.at("a");
      return a * std::pow(x, a - 1.0);
    }
    case MassKind::SechSquare: {
      const double a = params_.at("a");
      const double c = std::cosh(a * x);
      return -2.0 * a * std::tanh(a * x) / (c * c);
    }
    case MassKind::LorentzSquare: {
      const double a = params_.at("a");
      const double q = params_.at("q");
      const double d = q + x * x;
      return -4.0 * a * a * x / (d * d * d);
    }
    case MassKind::Custom:
      break;
  }
  // Custom: 5-point first-derivative stencil.
  const double h = 1e-4 * std::max(1.0, std::fabs(x));
  const double v = (mass_unchecked(x - 2 * h) - 8.0 * mass_unchecked(x - h) +
                    8.0 * mass_unchecked(x + h) - mass_unchecked(x + 2 * h)) /
                   (12.0 * h);
  if (!std::isfinite(v)) throw DerivativeError("non-finite mass derivative stencil");
  return v;
}

double MassSpec::mass_d2(double x) const {
  if (!domain_.contains(x)) throw OutOfDomainError(x);
  switch (kind_) {
    case MassKind::Constant:
      return 0.0;
    case MassKind::RationalSquare: {
      const double a = params_.at("a");
      const double u = 1.0 + x * x;
      const double s = (a + x * x) / u;
      const double s1 = 2.0 * x * (1.0 - a) / (u * u);
      const double s2 = 2.0 * (1.0 - a) * (1.0 - 3.0 * x * x) / (u * u * u);
      return 2.0 * (s1 * s1 + s * s2);
    }
    case MassKind::Exponential: {
      const double a = params_.at("a");
      return a * a * std::exp(a * x);
    }
    case MassKind::TanhShift: {
      const double a = params_.at("a");
      const double m = mass_unchecked(x);
      const double m1 = a * m * (2.0 - m);
      return 2.0 * a * (1.0 - m) * m1;
    }
    case MassKind::PowerLaw: {
      const double a = params_.at("a");
      return a * (a - 1.0) * std::pow(x, a - 2.0);
    }
    case MassKind::SechSquare: {
      const double a = params_.at("a");
      const double c = std::cosh(a * x);
      const double m = 1.0 / (c * c);
      return 2.0 * a * a * m * (2.0 - 3.0 * m);
    }
    case MassKind::LorentzSquare: {
      const double a = params_.at("a");
      const double q = params_.at("q");
      const double d = q + x * x;
      return 4.0 * a * a * (5.0 * x * x - q) / (d * d * d * d);
    }
    case MassKind::Custom:
      break;
  }
  // Custom: 5-point second-derivative stencil.
  const double h = 1e-4 * std::max(1.0, std::fabs(x));
  const double v = (-mass_unchecked(x - 2 * h) + 16.0 * mass_unchecked(x - h) -
                    30.0 * mass_unchecked(x) + 16.0 * mass_unchecked(x + h) -
                    mass_unchecked(x + 2 * h)) /
                   (12.0 * h * h);
  if (!std::isfinite(v)) throw DerivativeError("non-finite mass derivative stencil");
  return v;
}

std::string MassSpec::id() const {
  std::ostringstream os;
  os << mass_kind_name(kind_);
  if (!params_.empty()) {
    os << "(";
    bool first = true;
    for (const auto& [k, v] : params_) {
      if (!first) os << ",";
      os << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  return os.str();
}

MassSpec make_mass(MassKind kind, const Params& params, const Domain& domain,
                   std::optional<CustomProfile> custom) {
  MassSpec spec;
  spec.kind_ = kind;
  spec.params_ = params;
  spec.domain_ = domain;

  if (!(domain.hi > domain.lo)) throw InvalidParamError("mass domain is empty");

  switch (kind) {
    case MassKind::Constant:
      spec.params_.clear();
      break;
    case MassKind::RationalSquare:
      if (require_param(params, "a") <= 0.0)
        throw InvalidParamError("rational-square mass requires a > 0");
      break;
    case MassKind::Exponential: {
      const double a = require_param(params, "a");
      if (a != 0.0)
        spec.warnings_.push_back(
            "exponential mass: eigenfamily orthogonality requires a<0 for x<0 "
            "and a>0 for x>0");
      break;
    }
    case MassKind::TanhShift:
      require_param(params, "a");
      break;
    case MassKind::PowerLaw: {
      const double a = require_param(params, "a");
      if (spec.domain_.lo_infinite || spec.domain_.lo <= 0.0) {
        // Default domain is (0, inf); explicit domains must keep off x <= 0,
        // where x^a is zero or singular.
        if (!spec.domain_.lo_infinite) {
          if (spec.domain_.lo < 0.0)
            throw SingularDomainError("power-law mass is defined on x > 0");
          if (a < 0.0)
            throw SingularDomainError("power-law mass with a < 0 is singular at x = 0");
        }
        spec.domain_.lo = 1e-6;  // working cutoff above x = 0
        spec.domain_.lo_infinite = false;
      }
      break;
    }
    case MassKind::SechSquare:
      if (require_param(params, "a") <= 0.0)
        throw InvalidParamError("sech-square mass requires a > 0");
      break;
    case MassKind::LorentzSquare:
      require_param(params, "a");
      if (require_param(params, "q") <= 0.0)
        throw InvalidParamError("lorentz-square mass requires q > 0");
      break;
    case MassKind::Custom:
      if (!custom || (!custom->table && !custom->rule))
        throw InvalidParamError("custom mass needs a table or an evaluation rule");
      if (custom->table) {
        if (custom->table->size() < kMinTablePoints)
          throw InvalidParamError("custom mass table needs at least 16 samples");
        spec.domain_ = Domain::finite(custom->table->x_front(), custom->table->x_back());
      }
      spec.custom_ = std::make_shared<CustomProfile>(std::move(*custom));
      break;
  }

  // Positivity, sampled.
  const double probe = positivity_probe_half_width(kind, spec.params_);
  double lo = spec.domain_.lo, hi = spec.domain_.hi;
  if (spec.domain_.lo_infinite) lo = std::max(lo, -probe);
  if (spec.domain_.hi_infinite) hi = std::min(hi, probe);
  for (int i = 0; i < kPositivitySamples; ++i) {
    const double x = lo + (hi - lo) * i / (kPositivitySamples - 1);
    const double m = spec.mass_unchecked(x);
    if (!(m > 0.0) || !std::isfinite(m)) throw NonPositiveMassError(x);
  }
  return spec;
}

double evaluate_mass(const MassSpec& spec, double x) { return spec.mass(x); }

MassSpec load_custom_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParamError("cannot open profile file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidParamError("profile file is empty: " + path);
  {
    std::istringstream hs(line);
    std::string cx, cm;
    std::getline(hs, cx, ',');
    std::getline(hs, cm, ',');
    if (cx != "x" || cm != "m")
      throw InvalidParamError("profile header must start with 'x,m': " + path);
  }
  std::vector<double> xs, ms;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fx, fm;
    if (!std::getline(ls, fx, ',') || !std::getline(ls, fm, ','))
      throw InvalidParamError("profile line " + std::to_string(lineno) + " needs x,m");
    try {
      xs.push_back(std::stod(fx));
      ms.push_back(std::stod(fm));
    } catch (const std::exception&) {
      throw InvalidParamError("profile line " + std::to_string(lineno) +
                              " is not numeric");
    }
  }
  if (xs.size() < kMinTablePoints)
    throw InvalidParamError("profile needs at least 16 samples: " + path);
  CustomProfile profile;
  profile.table.emplace(std::move(xs), std::move(ms));
  return make_mass(MassKind::Custom, {}, Domain::real_line(), std::move(profile));
}

// ---------------------------------------------------------------------------
// mu map
// ---------------------------------------------------------------------------

namespace {

// Catalog antiderivatives of sqrt(m), with the integration constants of the
// printed closed forms.
std::function<double(double)> analytic_mu(const MassSpec& spec) {
  switch (spec.kind()) {
    case MassKind::Constant:
      return [](double x) { return x; };
    case MassKind::RationalSquare: {
      const double a = spec.param("a");
      return [a](double x) { return x + (a - 1.0) * std::atan(x); };
    }
    case MassKind::Exponential: {
      const double a = spec.param("a");
      if (a == 0.0) return [](double x) { return x; };
      return [a](double x) { return (2.0 / a) * std::exp(0.5 * a * x); };
    }
    case MassKind::TanhShift: {
      const double a = spec.param("a");
      if (a == 0.0) return [](double x) { return x; };
      return [a](double x) {
        const double t = a * x;
        // asinh(e^t) = ln(e^t + sqrt(1+e^{2t})); switch to the asymptote
        // before e^t overflows.
        const double as = (t > 350.0) ? t + M_LN2 : std::asinh(std::exp(t));
        return M_SQRT2 / a * as;
      };
    }
    case MassKind::PowerLaw: {
      const double a = spec.param("a");
      if (a == -2.0) return [](double x) { return std::log(x); };
      return [a](double x) { return 2.0 / (a + 2.0) * std::pow(x, 0.5 * (a + 2.0)); };
    }
    case MassKind::SechSquare: {
      const double a = spec.param("a");
      return [a](double x) {
        const double t = a * x;
        if (t > 350.0) return (2.0 / a) * (M_PI / 2.0);
        return (2.0 / a) * std::atan(std::exp(t));
      };
    }
    case MassKind::LorentzSquare: {
      const double a = spec.param("a");
      const double sq = std::sqrt(spec.param("q"));
      return [a, sq](double x) { return (a / sq) * std::atan(x / sq); };
    }
    case MassKind::Custom:
      break;
  }
  return {};
}

}  // namespace

MuMap mu_map(const MassSpec& spec, double origin) {
  MuMap map;
  map.dmu = [spec](double x) { return std::sqrt(spec.mass(x)); };

  if (!spec.is_custom()) {
    map.analytic = true;
    map.integration_origin = 0.0;  // constants fixed by the closed forms
    map.mu = analytic_mu(spec);
  } else {
    if (!spec.domain().contains(origin)) origin = spec.domain().lo;
    map.analytic = false;
    map.integration_origin = origin;
    auto integrand = [spec](double x) { return std::sqrt(spec.mass(x)); };
    map.mu = [integrand, origin](double x) {
      return integrate_signed(integrand, origin, x, kCustomQuadTol);
    };
  }

  map.mu_min = map.mu(spec.domain().lo);
  map.mu_max = map.mu(spec.domain().hi);
  return map;
}

const char* range_class_name(RangeClass rc) {
  switch (rc) {
    case RangeClass::FullLine: return "full-line";
    case RangeClass::HalfLine: return "half-line";
    case RangeClass::Bounded: return "bounded";
  }
  return "?";
}

RangeClass classify_range(const MuMap& map, double infinite_threshold, double zero_tol) {
  const bool lo_inf = map.mu_min <= -infinite_threshold;
  const bool hi_inf = map.mu_max >= infinite_threshold;
  if (lo_inf && hi_inf) return RangeClass::FullLine;
  if (std::fabs(map.mu_min) < zero_tol && hi_inf) return RangeClass::HalfLine;
  return RangeClass::Bounded;
}

bool admissible_for_orthonormal_family(RangeClass rc) {
  return rc == RangeClass::FullLine;
}

}  // namespace gho

#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature. Interval halving until the
// local K15-G7 error estimate meets the tolerance budget.

#include <cmath>
#include <vector>

#include "gho/errors.hpp"

namespace gho {

namespace detail {

// QUADPACK (G7,K15) abscissas and weights on [-1,1], positive half.
inline constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
void gauss_kronrod_15(const F& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kKronrodW[7] * fc;
  double g7 = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = hw * kKronrodX[i];
    const double fs = f(c + dx) + f(c - dx);
    k15 += kKronrodW[i] * fs;
    if (i % 2 == 1) g7 += kGaussW[i / 2] * fs;
  }
  value = k15 * hw;
  error = std::fabs((k15 - g7) * hw);
}

}  // namespace detail

/// Integrate f over [a, b] (a <= b) to absolute tolerance abs_tol.
/// Throws QuadratureError when the subdivision budget runs out first.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol,
                          int max_depth = 48) {
  struct Segment {
    double a, b, tol;
    int depth;
  };
  double total = 0.0;
  // Explicit stack; worst case max_depth levels deep.
  std::vector<Segment> stack{{a, b, abs_tol, 0}};
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    double v, err;
    detail::gauss_kronrod_15(f, s.a, s.b, v, err);
    if (err <= s.tol || s.b - s.a <= std::fabs(s.a) * 1e-15) {
      total += v;
      continue;
    }
    if (s.depth >= max_depth)
      throw QuadratureError("adaptive quadrature failed to reach tolerance");
    const double mid = 0.5 * (s.a + s.b);
    stack.push_back({s.a, mid, 0.5 * s.tol, s.depth + 1});
    stack.push_back({mid, s.b, 0.5 * s.tol, s.depth + 1});
  }
  return total;
}

/// Signed integral from a to b (either order).
template <class F>
double integrate_signed(const F& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  return a < b ? integrate_adaptive(f, a, b, abs_tol)
               : -integrate_adaptive(f, b, a, abs_tol);
}

}  // namespace gho

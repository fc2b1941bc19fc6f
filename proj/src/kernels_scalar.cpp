// Scalar reference kernels. These define the semantics; the AVX2 variants in
// kernels_avx2.cpp must agree with them (exactly for integer outputs, up to
// reassociation of partial sums for reductions).

#include "gho/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace gho::kernels::detail {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void hermite_step_scalar(const double* t, const double* hk, const double* hkm1,
                         double two_k, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * t[i] * hk[i] - two_k * hkm1[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

// Interior rows only (i in [2, n-3]); the caller fills the one-sided ends.
void deriv5_interior_scalar(const double* f, double inv12h, double* out, std::size_t n) {
  for (std::size_t i = 2; i + 2 < n; ++i)
    out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv12h;
}

void tridiag_apply_scalar(const double* d, const double* e, const double* v,
                          double* out, std::size_t n) {
  if (n == 1) {
    out[0] = d[0] * v[0];
    return;
  }
  out[0] = d[0] * v[0] + e[0] * v[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = e[i - 1] * v[i - 1] + d[i] * v[i] + e[i] * v[i + 1];
  out[n - 1] = e[n - 2] * v[n - 2] + d[n - 1] * v[n - 1];
}

void sturm_count_multi_scalar(const double* d, const double* e2, std::size_t n,
                              const double* shifts, std::size_t m, double pivmin,
                              int* counts) {
  for (std::size_t j = 0; j < m; ++j) {
    const double sigma = shifts[j];
    int cnt = 0;
    double q = d[0] - sigma;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < n; ++i) {
      q = d[i] - sigma - e2[i - 1] / q;
      if (std::fabs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++cnt;
    }
    counts[j] = cnt;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{
      axpy_scalar,   scal_scalar,    mul_scalar,           hermite_step_scalar,
      dot_scalar,    sum_scalar,     max_abs_scalar,       deriv5_interior_scalar,
      tridiag_apply_scalar, sturm_count_multi_scalar,
  };
  return t;
}

}  // namespace gho::kernels::detail

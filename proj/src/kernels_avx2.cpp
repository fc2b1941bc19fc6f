// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime CPU check
// (see kernels.cpp). On non-x86 builds it contributes an empty table.

#include "gho/kernels.hpp"

#include <cmath>
#include <cstddef>

#if defined(__AVX2__) && defined(__x86_64__)
#define GHO_HAVE_AVX2 1
#include <immintrin.h>
#else
#define GHO_HAVE_AVX2 0
#endif

namespace gho::kernels::detail {

#if GHO_HAVE_AVX2

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scal_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void mul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void hermite_step_avx2(const double* t, const double* hk, const double* hkm1,
                       double two_k, double* out, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(two_k);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d tt = _mm256_mul_pd(two, _mm256_loadu_pd(t + i));
    __m256d a = _mm256_mul_pd(tt, _mm256_loadu_pd(hk + i));
    __m256d b = _mm256_mul_pd(vk, _mm256_loadu_pd(hkm1 + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(a, b));
  }
  for (; i < n; ++i) out[i] = 2.0 * t[i] * hk[i] - two_k * hkm1[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void deriv5_interior_avx2(const double* f, double inv12h, double* out, std::size_t n) {
  if (n < 5) return;
  const __m256d c8 = _mm256_set1_pd(8.0);
  const __m256d ci = _mm256_set1_pd(inv12h);
  std::size_t i = 2;
  for (; i + 2 + 4 <= n; i += 4) {
    __m256d fm2 = _mm256_loadu_pd(f + i - 2);
    __m256d fm1 = _mm256_loadu_pd(f + i - 1);
    __m256d fp1 = _mm256_loadu_pd(f + i + 1);
    __m256d fp2 = _mm256_loadu_pd(f + i + 2);
    __m256d acc = _mm256_sub_pd(fm2, fp2);
    acc = _mm256_fmadd_pd(c8, _mm256_sub_pd(fp1, fm1), acc);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, ci));
  }
  for (; i + 2 < n; ++i)
    out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv12h;
}

void tridiag_apply_avx2(const double* d, const double* e, const double* v,
                        double* out, std::size_t n) {
  if (n == 1) {
    out[0] = d[0] * v[0];
    return;
  }
  out[0] = d[0] * v[0] + e[0] * v[1];
  std::size_t i = 1;
  for (; i + 1 + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(e + i - 1), _mm256_loadu_pd(v + i - 1));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(v + i), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(e + i), _mm256_loadu_pd(v + i + 1), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i + 1 < n; ++i)
    out[i] = e[i - 1] * v[i - 1] + d[i] * v[i] + e[i] * v[i + 1];
  out[n - 1] = e[n - 2] * v[n - 2] + d[n - 1] * v[n - 1];
}

// Four bisection shifts per sweep. Each lane performs exactly the scalar
// recurrence (sub, sub, div, clamp, compare), so the counts are bit-identical
// to the reference implementation.
void sturm_count4(const double* d, const double* e2, std::size_t n,
                  const double* shifts, double pivmin, int* counts) {
  const __m256d sigma = _mm256_loadu_pd(shifts);
  const __m256d vpiv = _mm256_set1_pd(pivmin);
  const __m256d vnegpiv = _mm256_set1_pd(-pivmin);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  __m256d q = _mm256_sub_pd(_mm256_set1_pd(d[0]), sigma);
  __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign, q), vpiv, _CMP_LT_OQ);
  q = _mm256_blendv_pd(q, vnegpiv, small);
  __m256d cnt = _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one);

  for (std::size_t i = 1; i < n; ++i) {
    __m256d t = _mm256_sub_pd(_mm256_set1_pd(d[i]), sigma);
    q = _mm256_sub_pd(t, _mm256_div_pd(_mm256_set1_pd(e2[i - 1]), q));
    small = _mm256_cmp_pd(_mm256_andnot_pd(sign, q), vpiv, _CMP_LT_OQ);
    q = _mm256_blendv_pd(q, vnegpiv, small);
    cnt = _mm256_add_pd(cnt, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, cnt);
  for (int j = 0; j < 4; ++j) counts[j] = static_cast<int>(lanes[j]);
}

void sturm_count_multi_avx2(const double* d, const double* e2, std::size_t n,
                            const double* shifts, std::size_t m, double pivmin,
                            int* counts) {
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) sturm_count4(d, e2, n, shifts + j, pivmin, counts + j);
  if (j < m) {
    double pad[4] = {0, 0, 0, 0};
    int cpad[4];
    for (std::size_t k = j; k < m; ++k) pad[k - j] = shifts[k];
    sturm_count4(d, e2, n, pad, pivmin, cpad);
    for (std::size_t k = j; k < m; ++k) counts[k] = cpad[k - j];
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{
      axpy_avx2,   scal_avx2,    mul_avx2,           hermite_step_avx2,
      dot_avx2,    sum_avx2,     max_abs_avx2,       deriv5_interior_avx2,
      tridiag_apply_avx2, sturm_count_multi_avx2,
  };
  return t;
}

#else  // !GHO_HAVE_AVX2

const KernelTable& avx2_table() {
  static const KernelTable t{};
  return t;
}

#endif

}  // namespace gho::kernels::detail

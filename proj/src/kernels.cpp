#include "gho/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace gho::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool avx2_compiled_in() { return detail::avx2_table().dot != nullptr; }

Backend initial_backend() {
  if (const char* env = std::getenv("GHO_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::Avx2))
      return Backend::Avx2;
    // "auto" or anything unrecognized falls through to detection
  }
  return backend_supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

const detail::KernelTable& table() {
  return backend_slot().load(std::memory_order_relaxed) == Backend::Avx2
             ? detail::avx2_table()
             : detail::scalar_table();
}

}  // namespace

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return avx2_compiled_in() && cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument(std::string("kernel backend unavailable: ") + backend_name(b));
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  table().axpy(a, x.data(), y.data(), x.size());
}

void scal(double a, std::span<double> x) { table().scal(a, x.data(), x.size()); }

void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  table().mul(a.data(), b.data(), out.data(), a.size());
}

void hermite_step(std::span<const double> t, std::span<const double> h_k,
                  std::span<const double> h_km1, double two_k, std::span<double> out) {
  table().hermite_step(t.data(), h_k.data(), h_km1.data(), two_k, out.data(), t.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  return table().dot(x.data(), y.data(), x.size());
}

double trapezoid(std::span<const double> f, double h) {
  if (f.empty()) return 0.0;
  const double s = table().sum(f.data(), f.size());
  return h * (s - 0.5 * (f.front() + f.back()));
}

double max_abs(std::span<const double> x) { return table().max_abs(x.data(), x.size()); }

void deriv5(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("deriv5: need at least 5 samples");
  const double inv12h = 1.0 / (12.0 * h);
  table().deriv5_interior(f.data(), inv12h, out.data(), n);
  // One-sided 5-point rows, exact for quartics like the interior stencil.
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv12h;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv12h;
  out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * inv12h;
  out[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv12h;
}

void tridiag_apply(std::span<const double> d, std::span<const double> e,
                   std::span<const double> v, std::span<double> out) {
  table().tridiag_apply(d.data(), e.data(), v.data(), out.data(), d.size());
}

int sturm_count(std::span<const double> d, std::span<const double> e2,
                double shift, double pivmin) {
  int count = 0;
  table().sturm_count_multi(d.data(), e2.data(), d.size(), &shift, 1, pivmin, &count);
  return count;
}

void sturm_count_multi(std::span<const double> d, std::span<const double> e2,
                       std::span<const double> shifts, double pivmin,
                       std::span<int> counts) {
  table().sturm_count_multi(d.data(), e2.data(), d.size(), shifts.data(),
                            shifts.size(), pivmin, counts.data());
}

}  // namespace gho::kernels

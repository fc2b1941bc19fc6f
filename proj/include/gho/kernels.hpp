#pragma once

// Low-level array kernels behind all grid numerics.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2/FMA, a vectorized variant. The backend is picked once at startup from
// the CPU (override with set_backend() or the GHO_KERNELS environment
// variable: "scalar", "avx2" or "auto"). Both variants of each kernel are
// equivalence-tested against each other; reductions may differ from the
// scalar path by reassociation only.

#include <cstddef>
#include <span>

namespace gho::kernels {

enum class Backend { Scalar, Avx2 };

/// True if this process can execute the given backend.
bool backend_supported(Backend b);

/// Backend used by all kernels below.
Backend active_backend();

/// Force a backend (throws std::invalid_argument if unsupported here).
void set_backend(Backend b);

const char* backend_name(Backend b);

// --- element-wise -----------------------------------------------------------

/// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y);

/// x[i] *= a
void scal(double a, std::span<double> x);

/// out[i] = a[i] * b[i] (out may alias a or b)
void mul(std::span<const double> a, std::span<const double> b, std::span<double> out);

/// out[i] = 2 t[i] h_k[i] - two_k * h_km1[i], one step of the Hermite
/// three-term recurrence applied across a whole sample array.
void hermite_step(std::span<const double> t, std::span<const double> h_k,
                  std::span<const double> h_km1, double two_k, std::span<double> out);

// --- reductions --------------------------------------------------------------

double dot(std::span<const double> x, std::span<const double> y);

/// Composite trapezoid weight: h * (sum f - (f_front + f_back)/2).
double trapezoid(std::span<const double> f, double h);

double max_abs(std::span<const double> x);

// --- stencils ----------------------------------------------------------------

/// First derivative by the 5-point central stencil, O(h^4); the two points at
/// each end use one-sided 5-point stencils of the same order. Requires n >= 5.
void deriv5(std::span<const double> f, double h, std::span<double> out);

/// out = T v for the symmetric tridiagonal T with diagonal d (size n) and
/// off-diagonal e (size n-1).
void tridiag_apply(std::span<const double> d, std::span<const double> e,
                   std::span<const double> v, std::span<double> out);

// --- Sturm sequences ---------------------------------------------------------

/// Number of eigenvalues of the symmetric tridiagonal matrix (diagonal d,
/// squared off-diagonal e2) strictly below `shift`, by the Sturm/LDL^T count.
/// `pivmin` guards the recurrence against division breakdown.
int sturm_count(std::span<const double> d, std::span<const double> e2,
                double shift, double pivmin);

/// Batched form: counts[j] = sturm_count(d, e2, shifts[j], pivmin).
/// The AVX2 variant runs four shifts per sweep and is bit-identical to the
/// scalar recurrence lane by lane.
void sturm_count_multi(std::span<const double> d, std::span<const double> e2,
                       std::span<const double> shifts, double pivmin,
                       std::span<int> counts);

// Raw tables, exposed so the two implementations can be tested side by side.
namespace detail {

struct KernelTable {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*hermite_step)(const double*, const double*, const double*, double, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*deriv5_interior)(const double*, double, double*, std::size_t);
  void (*tridiag_apply)(const double*, const double*, const double*, double*, std::size_t);
  void (*sturm_count_multi)(const double*, const double*, std::size_t,
                            const double*, std::size_t, double, int*);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // null entries when not compiled in

}  // namespace detail

}  // namespace gho::kernels

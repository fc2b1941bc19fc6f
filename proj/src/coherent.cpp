#include "gho/coherent.hpp"

#include <cmath>

#include "gho/kernels.hpp"
#include "gho/oscillator.hpp"

namespace gho {

CoherentState make_coherent(std::complex<double> z, double tail_tol) {
  if (!(tail_tol > 0.0) || tail_tol > 1e-6)
    throw InvalidParamError("coherent tail tolerance must lie in (0, 1e-6]");

  std::vector<std::complex<double>> coeffs;
  coeffs.reserve(kMaxHermiteDegree + 1);
  std::complex<double> c = std::exp(-0.5 * std::norm(z));
  double weight = 1.0 - std::norm(c);  // dropped tail: 1 - sum |c_n|^2
  coeffs.push_back(c);
  int n = 0;
  while (weight >= tail_tol) {
    if (n >= kMaxHermiteDegree)
      throw AmplitudeError("coherent amplitude needs truncation above order 64");
    ++n;
    c *= z / std::sqrt(static_cast<double>(n));
    weight -= std::norm(c);
    coeffs.push_back(c);
  }
  return CoherentState(z, n, std::move(coeffs));
}

WaveFunction coherent_wavefunction(const MassSpec& spec, const MuMap& map, RangeClass rc,
                                   const CoherentState& cs, const Grid& grid) {
  if (rc != RangeClass::FullLine)
    throw InadmissibleRangeError("coherent states need the orthonormal (full-line) family");

  const auto family = eigenfunction_family(spec, map, rc, cs.n_trunc(), grid);
  std::vector<double> re(grid.n, 0.0), im(grid.n, 0.0);
  for (int n = 0; n <= cs.n_trunc(); ++n) {
    const std::complex<double> c = cs.coeffs()[n];
    if (c.real() != 0.0) kernels::axpy(c.real(), family[n].real_part(), re);
    if (c.imag() != 0.0) kernels::axpy(c.imag(), family[n].real_part(), im);
  }
  if (cs.z().imag() == 0.0) return WaveFunction(grid, std::move(re));
  return WaveFunction(grid, std::move(re), std::move(im));
}

Moments expectation_mu(const CoherentState& cs) {
  const double s = 2.0 * cs.z().real();  // z + z*
  return {M_SQRT1_2 * s, 0.5 * (s * s + 1.0)};
}

Moments expectation_pi(const CoherentState& cs) {
  const double d = 2.0 * cs.z().imag();  // (z - z*)/i
  return {M_SQRT1_2 * d, 0.5 * (d * d + 1.0)};
}

std::pair<double, double> uncertainties(const CoherentState&) {
  // The variances collapse to 1/2 for every amplitude.
  return {M_SQRT1_2, M_SQRT1_2};
}

std::complex<double> coherent_overlap(std::complex<double> z, std::complex<double> zp) {
  return std::exp(-0.5 * std::norm(z) - 0.5 * std::norm(zp) + std::conj(z) * zp);
}

}  // namespace gho

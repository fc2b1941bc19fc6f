#pragma once

// Coherent states of the lowering operator: eigenstates A|z> = z|z> expanded
// over the oscillator eigenfamily with Poisson-weighted coefficients.

#include <complex>
#include <vector>

#include "gho/grid.hpp"
#include "gho/mass.hpp"

namespace gho {

class CoherentState {
 public:
  /// Amplitude z and truncation order selected so the dropped Poisson tail of
  /// the coefficient weights stays below tail_tol. The coefficients keep
  /// their closed form; there is no renormalization after truncation.
  CoherentState(std::complex<double> z, int n_trunc,
                std::vector<std::complex<double>> coeffs)
      : z_(z), n_trunc_(n_trunc), coeffs_(std::move(coeffs)) {}

  std::complex<double> z() const { return z_; }
  int n_trunc() const { return n_trunc_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

 private:
  std::complex<double> z_;
  int n_trunc_;
  std::vector<std::complex<double>> coeffs_;
};

/// Smallest truncation order with Poisson tail below tail_tol
/// (tail_tol in (0, 1e-6]). Orders above 64 are unsupported; amplitudes much
/// beyond |z| ~ 5 throw AmplitudeError.
CoherentState make_coherent(std::complex<double> z, double tail_tol = 1e-12);

/// Sum of c_n psi_n on the grid. Requires a full-line mu-range, where the
/// eigenfamily is orthonormal.
WaveFunction coherent_wavefunction(const MassSpec& spec, const MuMap& map, RangeClass rc,
                                   const CoherentState& cs, const Grid& grid);

struct Moments {
  double mean;    // <O>
  double second;  // <O^2>
};

/// <mu> = (z + z*)/sqrt2 and <mu^2> = [(z+z*)^2 + 1]/2, algebraically from z.
Moments expectation_mu(const CoherentState& cs);

/// <pi> = -i(z - z*)/sqrt2 (real) and <pi^2> = -[(z-z*)^2 - 1]/2.
Moments expectation_pi(const CoherentState& cs);

/// (Delta mu, Delta pi): both 1/sqrt2 for every amplitude.
std::pair<double, double> uncertainties(const CoherentState& cs);

/// <z|z'> = exp(-|z|^2/2 - |z'|^2/2 + conj(z) z').
std::complex<double> coherent_overlap(std::complex<double> z, std::complex<double> zp);

}  // namespace gho

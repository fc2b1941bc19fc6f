#pragma once

// Uniform 1D grid and sampled wavefunctions. Complex-valued states are held
// in structure-of-arrays form (real and imaginary component arrays) so the
// array kernels can run on contiguous doubles; a state with no imaginary
// array is exactly real.

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gho/errors.hpp"

namespace gho {

struct Grid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  int n = 0;

  Grid() = default;
  Grid(double lo, double hi, int count) : x_lo(lo), x_hi(hi), n(count) {
    if (n < 9) throw GridError("grid needs at least 9 points");
    if (!(x_hi > x_lo)) throw GridError("grid interval is empty");
  }

  double h() const { return (x_hi - x_lo) / (n - 1); }
  double x(int i) const { return x_lo + i * h(); }

  std::vector<double> points() const {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = x(i);
    return p;
  }

  bool operator==(const Grid&) const = default;
};

class WaveFunction {
 public:
  WaveFunction(Grid grid, std::vector<double> re, std::optional<int> label = {})
      : grid_(grid), re_(std::move(re)), label_(label) {
    validate();
  }

  WaveFunction(Grid grid, std::vector<double> re, std::vector<double> im,
               std::optional<int> label = {})
      : grid_(grid), re_(std::move(re)), im_(std::move(im)), label_(label) {
    validate();
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  bool is_real() const { return im_.empty(); }

  std::span<const double> real_part() const { return re_; }
  std::span<const double> imag_part() const { return im_; }
  std::span<double> real_part() { return re_; }
  std::span<double> imag_part() { return im_; }

  std::complex<double> value(int i) const {
    return {re_[static_cast<std::size_t>(i)],
            im_.empty() ? 0.0 : im_[static_cast<std::size_t>(i)]};
  }

  std::optional<int> label() const { return label_; }

  /// Set for states whose closed-form normalization does not exist
  /// (bounded mu-range); they are constructed but only formal.
  bool formal() const { return formal_; }
  void mark_formal() { formal_ = true; }

 private:
  void validate() const {
    if (static_cast<int>(re_.size()) != grid_.n ||
        (!im_.empty() && im_.size() != re_.size()))
      throw GridError("wavefunction sample count does not match grid");
    for (double v : re_)
      if (!std::isfinite(v)) throw GridError("wavefunction has non-finite entries");
    for (double v : im_)
      if (!std::isfinite(v)) throw GridError("wavefunction has non-finite entries");
  }

  Grid grid_;
  std::vector<double> re_;
  std::vector<double> im_;
  std::optional<int> label_;
  bool formal_ = false;
};

}  // namespace gho

#pragma once

// Local cubic interpolation through tabulated samples (Lagrange cubic on the
// four knots nearest the query). Knots must be strictly increasing; they need
// not be uniform.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gho/errors.hpp"

namespace gho {

class CubicTable {
 public:
  CubicTable() = default;
  CubicTable(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 4)
      throw InvalidParamError("cubic table needs at least 4 matching samples");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1]))
        throw InvalidParamError("cubic table abscissas must be strictly increasing");
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

  double operator()(double x) const {
    // Pick the 4-knot window [j, j+3] with x between knots j+1 and j+2 where
    // possible, clamped at the table ends.
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::ptrdiff_t seg = std::distance(x_.begin(), it) - 1;  // x in [x_[seg], x_[seg+1])
    std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(seg - 1, 0,
                                                  static_cast<std::ptrdiff_t>(x_.size()) - 4);
    const double* xs = x_.data() + j;
    const double* ys = y_.data() + j;
    double result = 0.0;
    for (int k = 0; k < 4; ++k) {
      double term = ys[k];
      for (int l = 0; l < 4; ++l)
        if (l != k) term *= (x - xs[l]) / (xs[k] - xs[l]);
      result += term;
    }
    return result;
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace gho

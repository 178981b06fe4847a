#pragma once

#include <complex>
#include <span>
#include <vector>

namespace radgab {

/// Not-a-knot cubic spline through complex samples on an increasing grid.
/// Outside the sample range the end cubics are extended.
class CubicSpline {
 public:
  CubicSpline(std::span<const double> x, std::span<const std::complex<double>> y);

  std::complex<double> operator()(double x) const;

 private:
  std::vector<double> x_;
  std::vector<std::complex<double>> y_;
  std::vector<std::complex<double>> m_;  // second derivatives at the knots
};

}  // namespace radgab

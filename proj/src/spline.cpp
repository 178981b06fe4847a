#include "radgab/spline.hpp"

#include <algorithm>

#include "radgab/error.hpp"

namespace radgab {

using cplx = std::complex<double>;

CubicSpline::CubicSpline(std::span<const double> x, std::span<const cplx> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), cplx{}) {
  const std::size_t n = x_.size();
  require(n == y_.size(), "CubicSpline: x and y sizes differ");
  require(n >= 4, "CubicSpline: need at least 4 knots");
  for (std::size_t i = 1; i < n; ++i)
    require(x_[i] > x_[i - 1], "CubicSpline: knots must be strictly increasing");

  std::vector<double> h(n - 1);
  std::vector<cplx> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Interior equations for M_1..M_{n-2}:
  //   h_{i-1} M_{i-1} + 2 (h_{i-1} + h_i) M_i + h_i M_{i+1} = 6 (slope_i - slope_{i-1}).
  // Not-a-knot eliminates M_0 and M_{n-1}:
  //   M_0 = ((h_0 + h_1) M_1 - h_0 M_2) / h_1, and symmetrically at the right end.
  const std::size_t k = n - 2;
  std::vector<double> lower(k, 0.0), diag(k, 0.0), upper(k, 0.0);
  std::vector<cplx> rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = r + 1;
    lower[r] = h[i - 1];
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    upper[r] = h[i];
    rhs[r] = 6.0 * (slope[i] - slope[i - 1]);
  }
  {
    const double h0 = h[0], h1 = h[1];
    diag[0] += h0 * (h0 + h1) / h1;
    upper[0] -= h0 * h0 / h1;
  }
  {
    const double ha = h[n - 2], hb = h[n - 3];  // last and second-to-last spans
    diag[k - 1] += ha * (ha + hb) / hb;
    lower[k - 1] -= ha * ha / hb;
  }

  // Thomas algorithm.
  for (std::size_t r = 1; r < k; ++r) {
    const double w = lower[r] / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  std::vector<cplx> interior(k);
  interior[k - 1] = rhs[k - 1] / diag[k - 1];
  for (std::size_t r = k - 1; r-- > 0;)
    interior[r] = (rhs[r] - upper[r] * interior[r + 1]) / diag[r];

  for (std::size_t r = 0; r < k; ++r) m_[r + 1] = interior[r];
  m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
  const double ha = h[n - 2], hb = h[n - 3];
  m_[n - 1] = ((ha + hb) * m_[n - 2] - ha * m_[n - 3]) / hb;
}

cplx CubicSpline::operator()(double x) const {
  const std::size_t n = x_.size();
  std::size_t i;
  if (x <= x_.front()) {
    i = 0;
  } else if (x >= x_.back()) {
    i = n - 2;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  }
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
}

}  // namespace radgab

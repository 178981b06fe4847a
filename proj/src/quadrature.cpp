#include "radgab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "radgab/error.hpp"

namespace radgab {

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
  require(n >= 1, "gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Ascending order: node i is the negative root.
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    const double w = 2.0 * half / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t per_panel,
                                        double lo, double hi) {
  require(panels >= 1, "composite_gauss_legendre: panels must be >= 1");
  const QuadratureRule base = gauss_legendre(per_panel);
  QuadratureRule rule;
  rule.nodes.reserve(panels * per_panel);
  rule.weights.reserve(panels * per_panel);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    for (std::size_t k = 0; k < per_panel; ++k) {
      rule.nodes.push_back(a + 0.5 * width * (base.nodes[k] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[k]);
    }
  }
  return rule;
}

}  // namespace radgab

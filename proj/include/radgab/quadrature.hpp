#pragma once

#include <cstddef>
#include <vector>

namespace radgab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo = -1.0, double hi = 1.0);

/// Composite rule: `panels` equal panels on [lo, hi], `per_panel` Gauss-Legendre
/// nodes in each. Nodes are increasing.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t per_panel,
                                        double lo, double hi);

}  // namespace radgab

#include "radgab/omega.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "radgab/error.hpp"
#include "radgab/quadrature.hpp"
#include "radgab/specfun.hpp"

namespace radgab {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative size below which a shifted window sample is treated as zero.
constexpr double kNegligible = 1e-18;

}  // namespace

OrbitPoint::OrbitPoint(double r_, double s_, double c_) : r(r_), s(s_), c(c_) {
  require(std::isfinite(r) && r >= 0.0, "OrbitPoint: r must be >= 0");
  require(std::isfinite(s) && s >= 0.0, "OrbitPoint: s must be >= 0");
  require(std::isfinite(c) && std::abs(c) <= 1.0, "OrbitPoint: c must lie in [-1, 1]");
  if (r == 0.0 || s == 0.0) c = 1.0;
}

std::size_t min_phi_nodes(double theta_max, const OrbitPoint& p) {
  const double n = std::ceil(8.0 * (1.0 + theta_max * p.s + theta_max * p.r));
  return std::max<std::size_t>(64, static_cast<std::size_t>(n));
}

RadialProfile omega_apply(const RadialProfile& g, const OrbitPoint& p, std::size_t quad_nodes) {
  const RadialGrid& grid = g.grid();
  const int d = grid.dim();
  require(d >= 2, "omega_apply: dimension must be >= 2");
  const std::size_t needed = min_phi_nodes(grid.theta_max(), p);
  if (quad_nodes < needed)
    throw QuadratureError("omega_apply: quad_nodes=" + std::to_string(quad_nodes) +
                          " is below the required " + std::to_string(needed));

  const QuadratureRule rule = gauss_legendre(quad_nodes, 0.0, kPi);
  const double prefactor = sphere_area(d - 1) / sphere_area(d);
  std::vector<double> cos_phi(quad_nodes), sin_phi(quad_nodes), weight(quad_nodes);
  for (std::size_t m = 0; m < quad_nodes; ++m) {
    cos_phi[m] = std::cos(rule.nodes[m]);
    sin_phi[m] = std::sin(rule.nodes[m]);
    weight[m] = prefactor * rule.weights[m] * std::pow(sin_phi[m], d - 2);
  }

  // tail[n] = max |g0| over grid nodes n..end; with it, radii whose shifted
  // arguments only reach a negligible part of g are skipped.
  const auto radii = grid.radii();
  const auto samples = g.values();
  std::vector<double> tail(radii.size() + 1, 0.0);
  for (std::size_t n = radii.size(); n-- > 0;) tail[n] = std::max(tail[n + 1], std::abs(samples[n]));
  const double cutoff = kNegligible * tail[0];
  auto negligible_beyond = [&](double rho) {
    const auto it = std::lower_bound(radii.begin(), radii.end(), rho);
    return tail[static_cast<std::size_t>(it - radii.begin())] <= cutoff;
  };

  const RadialFunction g0 = g.evaluator();
  const double sin_alpha = std::sqrt(std::max(0.0, 1.0 - p.c * p.c));
  const bool has_phase = p.s != 0.0;
  std::vector<cplx> out(radii.size());
  for (std::size_t n = 0; n < radii.size(); ++n) {
    const double theta = radii[n];
    if (negligible_beyond(std::abs(theta - p.r))) continue;
    const double phase_scale = 2.0 * kPi * theta * p.s * p.c;
    const double bessel_scale = theta * p.s * sin_alpha;
    cplx acc{};
    for (std::size_t m = 0; m < quad_nodes; ++m) {
      const double radicand = theta * theta - 2.0 * p.r * theta * cos_phi[m] + p.r * p.r;
      cplx term = g0(std::sqrt(std::max(0.0, radicand)));
      if (has_phase) {
        const double ph = phase_scale * cos_phi[m];
        term *= cplx(std::cos(ph), std::sin(ph));
        if (bessel_scale != 0.0) term *= sph_bessel(d - 1, bessel_scale * sin_phi[m]);
      }
      acc += weight[m] * term;
    }
    out[n] = acc;
  }
  return RadialProfile(g.grid_ptr(), std::move(out));
}

RadialProfile omega_apply(const RadialProfile& g, const OrbitPoint& p) {
  return omega_apply(g, p, min_phi_nodes(g.grid().theta_max(), p));
}

cplx radial_stft(const RadialProfile& f, const RadialProfile& g, const OrbitPoint& p) {
  check_same_grid(f, g, "radial_stft");
  const double ph = -kPi * p.r * p.s * p.c;
  return cplx(std::cos(ph), std::sin(ph)) * inner(f, omega_apply(g, p));
}

cplx stft_oracle_2d(const RadialFunction& f, const RadialFunction& g, const Vec2& x,
                    const Vec2& omega, const StftOracleOptions& options) {
  require(options.half_width > 0.0 && options.panel_width > 0.0 && options.nodes_per_panel > 0,
          "stft_oracle_2d: invalid quadrature options");
  if (!f || !g) return {};
  std::array<QuadratureRule, 2> axis;
  std::array<std::vector<cplx>, 2> phase;
  for (int k = 0; k < 2; ++k) {
    const double lo = std::min(0.0, x[k]) - options.half_width;
    const double hi = std::max(0.0, x[k]) + options.half_width;
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / options.panel_width));
    axis[k] = composite_gauss_legendre(panels, options.nodes_per_panel, lo, hi);
    phase[k].resize(axis[k].size());
    for (std::size_t i = 0; i < axis[k].size(); ++i) {
      const double ph = -2.0 * kPi * axis[k].nodes[i] * omega[k];
      phase[k][i] = axis[k].weights[i] * cplx(std::cos(ph), std::sin(ph));
    }
  }
  cplx total{};
  for (std::size_t i = 0; i < axis[0].size(); ++i) {
    const double t0 = axis[0].nodes[i];
    cplx row{};
    for (std::size_t j = 0; j < axis[1].size(); ++j) {
      const double t1 = axis[1].nodes[j];
      const cplx fv = f(std::hypot(t0, t1));
      const cplx gv = g(std::hypot(t0 - x[0], t1 - x[1]));
      row += phase[1][j] * fv * std::conj(gv);
    }
    total += phase[0][i] * row;
  }
  return total;
}

}  // namespace radgab

#pragma once

#include <array>
#include <cstddef>

#include "radgab/radial.hpp"

namespace radgab {

/// Rotation invariants (|x|, |omega|, cos of the angle between them) of a
/// phase-space pair. When either length is zero the angle is meaningless and
/// c is pinned to 1.
struct OrbitPoint {
  double r = 0.0;
  double s = 0.0;
  double c = 1.0;

  OrbitPoint() = default;
  OrbitPoint(double r_, double s_, double c_);
};

/// Smallest phi-node count accepted by omega_apply for this grid and point.
std::size_t min_phi_nodes(double theta_max, const OrbitPoint& p);

/// Omega(p) g sampled on g's grid, using `quad_nodes` Gauss-Legendre nodes in
/// phi. Throws QuadratureError when quad_nodes < min_phi_nodes.
RadialProfile omega_apply(const RadialProfile& g, const OrbitPoint& p, std::size_t quad_nodes);

/// omega_apply with quad_nodes = min_phi_nodes.
RadialProfile omega_apply(const RadialProfile& g, const OrbitPoint& p);

/// exp(-pi i r s c) <f, Omega(p) g>.
cplx radial_stft(const RadialProfile& f, const RadialProfile& g, const OrbitPoint& p);

using Vec2 = std::array<double, 2>;

struct StftOracleOptions {
  double half_width = 6.0;        // integrand support radius around 0 and x
  double panel_width = 0.25;
  std::size_t nodes_per_panel = 12;
};

/// Direct 2-D short-time Fourier transform
///   int f(t) conj(g(t - x)) exp(-2 pi i t . omega) dt
/// of radial functions by tensor Gauss-Legendre quadrature on a box covering
/// both supports.
cplx stft_oracle_2d(const RadialFunction& f, const RadialFunction& g, const Vec2& x,
                    const Vec2& omega, const StftOracleOptions& options = {});

}  // namespace radgab

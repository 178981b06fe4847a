#pragma once

namespace radgab {

/// Order of a Bessel function of the first kind, stored as twice the order so
/// integer and half-integer orders share one representation.
class BesselOrder {
 public:
  explicit BesselOrder(int twice_order);

  static BesselOrder integer(int n) { return BesselOrder(2 * n); }

  /// The order (d - 2) / 2 that serves the spherical Bessel function B_d.
  static BesselOrder for_dimension(int d) { return BesselOrder(d - 2); }

  int twice_order() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  bool is_half_integer() const { return twice_ % 2 != 0; }

 private:
  int twice_;
};

/// J_nu(t) for t >= 0.
///
/// Orders 0 and 1 use a long double power series up to t = 17 and the Hankel
/// asymptotic expansion beyond. Orders 1/2 and -1/2 have closed forms. Higher
/// orders recur upward from those base pairs when t >= nu and use Miller's
/// normalized downward recurrence below the turning point.
double bessel_j(BesselOrder order, double t);

/// Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms).
double gamma_lanczos(double x);

/// Normalized sphere average B_d(t) of exp(2 pi i t eta.xi), d >= 1, t >= 0.
/// B_1(t) = cos(2 pi t), B_2(t) = J_0(2 pi t), B_3(t) = sin(2 pi t) / (2 pi t).
double sph_bessel(int d, double t);

}  // namespace radgab

#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Adaptive Simpson on [a, b] with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 48) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec.run(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// J_0 by its power series in long double; adequate for x <= 20.
inline double j0_series(double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = -0.25L * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-30L) break;
  }
  return static_cast<double>(sum);
}

// Root of f in [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// (1/2pi) int_0^{2pi} cos(2 pi t cos th) dth by the periodic trapezoid rule.
inline double sphere_average_2d(double t, int nodes = 4096) {
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) sum += std::cos(2.0 * pi * t * std::cos(2.0 * pi * i / nodes));
  return sum / nodes;
}

// Omega(x, omega) g at the point t = (theta, 0) in d = 2, as the rotation average
// (1/2pi) int exp(2 pi i (R omega) . t) g(|t - R x|) dpsi, periodic trapezoid.
inline cplx omega_2d(const std::function<cplx(double)>& g, double theta, double r, double s,
                     double c, int nodes = 4096) {
  const double sa = std::sqrt(std::max(0.0, 1.0 - c * c));
  cplx sum{};
  for (int i = 0; i < nodes; ++i) {
    const double psi = 2.0 * pi * i / nodes;
    const double cp = std::cos(psi), sp = std::sin(psi);
    const double x0 = r * cp;
    const double x1 = r * sp;
    const double w0 = s * (c * cp - sa * sp);
    const double ph = 2.0 * pi * w0 * theta;
    sum += std::polar(1.0, ph) * g(std::hypot(theta - x0, x1));
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace oracle

#include "radgab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "radgab/error.hpp"

namespace radgab {

namespace {

constexpr double kPi = std::numbers::pi;

// Above this argument the Hankel expansion of J_0 and J_1 is accurate to
// better than 1e-14 and the series loses more than that to cancellation.
constexpr double kSeriesLimit = 17.0;

double series_j(int nu, double x) {
  const long double half = 0.5L * x;
  const long double q = -half * half;
  long double term = 1.0L;
  for (int i = 1; i <= nu; ++i) term *= half / i;
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && k > half) break;
  }
  return static_cast<double>(sum);
}

double hankel_j(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k
  double last = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const double mag = std::abs(term);
    if (mag > last || mag < 1e-18) break;
    last = mag;
    // (-1)^{k/2} pattern: P takes even k, Q odd k, with alternating signs.
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    const double odd = 2.0 * k + 1.0;
    term *= (mu - odd * odd) / ((k + 1.0) * 8.0 * x);
  }
  const double phase = (0.5 * nu + 0.25) * kPi;
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  const double cos_chi = c * cp + s * sp;
  const double sin_chi = s * cp - c * sp;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double base_integer(int nu, double x) {
  return x <= kSeriesLimit ? series_j(nu, x) : hankel_j(nu, x);
}

// J_{base + n}(x) from j0 = J_base(x), j1 = J_{base+1}(x), where base is 0 or -1/2.
double recur(double base, int n, double x, double j0, double j1) {
  if (n == 0) return j0;
  if (n == 1) return j1;
  const double nu = base + n;
  if (x >= nu) {
    double prev = j0;
    double cur = j1;
    for (int m = 1; m < n; ++m) {
      const double next = 2.0 * (base + m) / x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // Miller: recur down from a start index well above n with arbitrary seed,
  // then normalize against whichever base value is larger in magnitude.
  const int start = n + 24 + static_cast<int>(std::sqrt(240.0 * n));
  double next = 0.0;
  double cur = 1e-300;
  double target = 0.0;
  double u1 = 0.0;
  for (int m = start; m >= 1; --m) {
    const double prev = 2.0 * (base + m) / x * cur - next;
    next = cur;
    cur = prev;
    if (m - 1 == n) target = cur;
    if (m - 1 == 1) u1 = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      target *= 1e-250;
      u1 *= 1e-250;
    }
  }
  const double u0 = cur;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / u0 : j1 / u1;
  return target * scale;
}

}  // namespace

BesselOrder::BesselOrder(int twice_order) : twice_(twice_order) {
  require(twice_order >= 0, "BesselOrder: twice_order must be >= 0, got " +
                                std::to_string(twice_order));
}

double bessel_j(BesselOrder order, double t) {
  require(t >= 0.0, "bessel_j: argument t must be >= 0");
  const int twice = order.twice_order();
  if (t == 0.0) return twice == 0 ? 1.0 : 0.0;
  if (!order.is_half_integer()) {
    const int n = twice / 2;
    if (n <= 1) return base_integer(n, t);
    return recur(0.0, n, t, base_integer(0, t), base_integer(1, t));
  }
  const double amp = std::sqrt(2.0 / (kPi * t));
  const double j_minus = amp * std::cos(t);
  const double j_plus = amp * std::sin(t);
  return recur(-0.5, (twice + 1) / 2, t, j_minus, j_plus);
}

double gamma_lanczos(double x) {
  require(x > 0.0, "gamma_lanczos: x must be > 0");
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
  const double z = x - 1.0;
  double a = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) a += kCoeff[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

double sph_bessel(int d, double t) {
  require(d >= 1, "sph_bessel: d must be >= 1");
  require(t >= 0.0, "sph_bessel: t must be >= 0");
  const double x = 2.0 * kPi * t;
  switch (d) {
    case 1: return std::cos(x);
    case 3: return t == 0.0 ? 1.0 : std::sin(x) / x;
    default: break;
  }
  const double alpha = 0.5 * (d - 2);
  if (t < 1e-6) {
    const double u = (kPi * t) * (kPi * t);
    return 1.0 - u / (alpha + 1.0) + u * u / (2.0 * (alpha + 1.0) * (alpha + 2.0));
  }
  return gamma_lanczos(alpha + 1.0) * std::pow(kPi * t, -alpha) *
         bessel_j(BesselOrder::for_dimension(d), x);
}

}  // namespace radgab

#include "radgab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "radgab/csv.hpp"
#include "radgab/error.hpp"

namespace radgab {

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest max-ratio along the rotation orbit of (x, omega) against one atom.
// Angles are polar angles; the atom sits at x_i = (rx, 0) and
// omega_i = sw (cos beta, sin beta).
class OrbitDistance {
 public:
  OrbitDistance(double r, double ax, double s, double aw, double rx, double sw, double beta,
                double a, double b)
      : r_(r), ax_(ax), s_(s), aw_(aw), rx_(rx), sw_(sw), beta_(beta), a_(a), b_(b) {}

  double operator()(double psi) const {
    const double dx2 = r_ * r_ + rx_ * rx_ - 2.0 * r_ * rx_ * std::cos(ax_ - psi);
    const double dw2 = s_ * s_ + sw_ * sw_ - 2.0 * s_ * sw_ * std::cos(aw_ - psi - beta_);
    return std::max(std::sqrt(std::max(0.0, dx2)) / a_, std::sqrt(std::max(0.0, dw2)) / b_);
  }

  // Range of psi on which the x-distance can be <= a, as (center, half width).
  std::pair<double, double> window() const {
    if (r_ == 0.0 || rx_ == 0.0) return {0.0, kPi};
    const double cos_min = (r_ * r_ + rx_ * rx_ - a_ * a_) / (2.0 * r_ * rx_);
    if (cos_min <= -1.0) return {ax_, kPi};
    return {ax_, std::acos(std::min(1.0, cos_min))};
  }

 private:
  double r_, ax_, s_, aw_, rx_, sw_, beta_, a_, b_;
};

double golden_min(const OrbitDistance& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

double margin_one_orientation(const Vec2& x, const Vec2& omega, const LatticeSpec& spec,
                              std::size_t samples) {
  const double r = std::hypot(x[0], x[1]);
  const double s = std::hypot(omega[0], omega[1]);
  const double ax = std::atan2(x[1], x[0]);
  const double aw = std::atan2(omega[1], omega[0]);
  const int j_lo = std::max(0, static_cast<int>(std::ceil((r - spec.a) / spec.a)));
  const int j_hi = static_cast<int>(std::floor((r + spec.a) / spec.a));
  const int k_lo = std::max(0, static_cast<int>(std::ceil((s - spec.b) / spec.b)));
  const int k_hi = static_cast<int>(std::floor((s + spec.b) / spec.b));

  double best = std::numeric_limits<double>::infinity();
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int k = k_lo; k <= k_hi && j + k <= spec.jk_max; ++k) {
      const int n = n_count(j, k);
      for (int ell = -n; ell <= n; ++ell) {
        const double c = lattice_cosine({j, k, ell});
        const double beta = std::atan2(std::sqrt(std::max(0.0, 1.0 - c * c)), c);
        const OrbitDistance f(r, ax, s, aw, spec.a * j, spec.b * k, beta, spec.a, spec.b);
        const auto [center, half] = f.window();
        const double step = 2.0 * half / static_cast<double>(samples);
        double local = std::numeric_limits<double>::infinity();
        double arg = center;
        for (std::size_t m = 0; m <= samples; ++m) {
          const double psi = center - half + step * static_cast<double>(m);
          const double v = f(psi);
          if (v < local) {
            local = v;
            arg = psi;
          }
        }
        if (local > 1.0) local = std::min(local, golden_min(f, arg - step, arg + step));
        best = std::min(best, local);
        if (best <= 1.0) return best;
      }
    }
  }
  return best;
}

}  // namespace

void LatticeSpec::validate() const {
  require(std::isfinite(a) && a > 0.0, "lattice: a must be > 0");
  require(std::isfinite(b) && b > 0.0, "lattice: b must be > 0");
  require(d >= 2, "lattice: d must be >= 2");
  require(jk_max >= 1, "lattice: J must be >= 1");
}

int n_count(int j, int k) {
  require(j >= 0 && k >= 0, "n_count: j and k must be >= 0");
  if (j == 0 || k == 0) return 0;
  const double jd = j, kd = k;
  const double root_j = std::sqrt(3.0 + 3.0 / (2.0 * jd) - std::pow(3.0 / (4.0 * jd), 2));
  const double root_k = std::sqrt(3.0 + 3.0 / (2.0 * kd) - std::pow(3.0 / (4.0 * kd), 2));
  const double num = kd * root_j + jd * root_k;
  const double den = jd * kd + 0.5 * (jd + kd) - 0.375 * (jd / kd + kd / jd) + 1.0;
  const double value = (kPi / 4.0) / std::atan(num / den);
  return static_cast<int>(std::ceil(value - 1e-9));
}

double lattice_cosine(const LatticeIndex& idx) {
  const int n = n_count(idx.j, idx.k);
  if (n == 0) return 1.0;
  if (idx.ell == n) return 1.0;
  if (idx.ell == -n) return -1.0;
  return std::sin(kPi * idx.ell / (2.0 * n));
}

double mu_weight(const LatticeIndex& idx, int d) {
  require(d >= 2, "mu_weight: d must be >= 2");
  const int n = n_count(idx.j, idx.k);
  require(std::abs(idx.ell) <= n, "mu_weight: |ell| exceeds N(j,k)");
  if (std::abs(idx.ell) == n)
    return std::pow(idx.j, d - 1) + std::pow(idx.k, d - 1) + 1.0;
  const double cosine = std::cos(kPi * idx.ell / (2.0 * n));
  return (idx.j + idx.k) * std::pow(static_cast<double>(idx.j) * idx.k * cosine, d - 2);
}

std::vector<LatticeAtom> build_lattice(const LatticeSpec& spec) {
  spec.validate();
  std::vector<LatticeAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(index_count(spec.jk_max)));
  for (int j = 0; j <= spec.jk_max; ++j) {
    for (int k = 0; j + k <= spec.jk_max; ++k) {
      const int n = n_count(j, k);
      for (int ell = -n; ell <= n; ++ell) {
        const LatticeIndex idx{j, k, ell};
        atoms.push_back({idx, OrbitPoint(spec.a * j, spec.b * k, lattice_cosine(idx)),
                         mu_weight(idx, spec.d)});
      }
    }
  }
  return atoms;
}

std::int64_t index_count(int n) {
  require(n >= 0, "index_count: n must be >= 0");
  std::int64_t total = 0;
  for (int j = 0; j <= n; ++j)
    for (int k = 0; j + k <= n; ++k) total += 2 * n_count(j, k) + 1;
  return total;
}

double covering_margin(const Vec2& x, const Vec2& omega, const LatticeSpec& spec,
                       const CoveringOptions& options) {
  spec.validate();
  require(spec.d == 2, "covered_2d: only d = 2 is supported");
  require(options.angular_samples >= 8, "covered_2d: angular_samples must be >= 8");
  double best = margin_one_orientation(x, omega, spec, options.angular_samples);
  if (best > 1.0 && options.allow_reflection) {
    const Vec2 px{x[0], -x[1]};
    const Vec2 pw{omega[0], -omega[1]};
    best = std::min(best, margin_one_orientation(px, pw, spec, options.angular_samples));
  }
  return best;
}

bool covered_2d(const Vec2& x, const Vec2& omega, const LatticeSpec& spec,
                const CoveringOptions& options) {
  return covering_margin(x, omega, spec, options) <= 1.0 + 1e-12;
}

void write_lattice_csv(std::ostream& out, const std::vector<LatticeAtom>& atoms) {
  out << "j,k,ell,r,s,c,mu\n";
  for (const LatticeAtom& atom : atoms) {
    out << atom.index.j << ',' << atom.index.k << ',' << atom.index.ell << ','
        << format_double(atom.point.r) << ',' << format_double(atom.point.s) << ','
        << format_double(atom.point.c) << ',' << format_double(atom.mu) << '\n';
  }
}

std::string lattice_csv(const std::vector<LatticeAtom>& atoms) {
  std::ostringstream out;
  write_lattice_csv(out, atoms);
  return out.str();
}

}  // namespace radgab

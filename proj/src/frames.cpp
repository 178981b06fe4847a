#include "radgab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "radgab/csv.hpp"
#include "radgab/error.hpp"
#include "radgab/omega.hpp"
#include "radgab/parallel.hpp"

namespace radgab {

namespace {

using Matrix = std::vector<std::vector<cplx>>;

double coeff_norm2(std::span<const cplx> c) {
  double sum = 0.0;
  for (const cplx& v : c) sum += std::norm(v);
  return sum;
}

// Analysis with per-atom weights: out_i = w_i <r, atom_i>.
CoeffVector weighted_analysis(const RadialProfile& r, const FrameSystem& fr,
                              std::span<const double> w) {
  CoeffVector out(fr.size());
  parallel_for(fr.size(), [&](std::size_t i) { out[i] = w[i] * inner(r, fr.profiles()[i]); });
  return out;
}

RadialProfile weighted_synthesis(std::span<const cplx> c, const FrameSystem& fr,
                                 std::span<const double> w) {
  std::vector<cplx> out(fr.grid_ptr()->size());
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const cplx ci = w[i] * c[i];
    if (ci == cplx{}) continue;
    const auto v = fr.profiles()[i].values();
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += ci * v[n];
  }
  return RadialProfile(fr.grid_ptr(), std::move(out));
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

std::vector<cplx> mat_vec(const Matrix& h, std::span<const cplx> v) {
  std::vector<cplx> out(h.size());
  for (std::size_t m = 0; m < h.size(); ++m)
    for (std::size_t n = 0; n < v.size(); ++n) out[m] += h[m][n] * v[n];
  return out;
}

void normalize(std::vector<cplx>& v) {
  const double nv = std::sqrt(coeff_norm2(v));
  for (cplx& x : v) x /= nv;
}

// Lower-triangular L with H = L L^*, or nothing if H is not positive definite.
std::optional<Matrix> cholesky(const Matrix& h) {
  const std::size_t n = h.size();
  Matrix l(n, std::vector<cplx>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double diag = h[j][j].real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l[j][k]);
    if (!(diag > 0.0)) return std::nullopt;
    l[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx sum = h[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i][k] * std::conj(l[j][k]);
      l[i][j] = sum / l[j][j].real();
    }
  }
  return l;
}

std::vector<cplx> cholesky_solve(const Matrix& l, std::vector<cplx> b) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i][k] * b[k];
    b[i] /= l[i][i].real();
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= std::conj(l[k][i]) * b[k];
    b[i] /= l[i][i].real();
  }
  return b;
}

// Iterates v <- step(v) / |step(v)| until the Rayleigh quotient of h settles.
template <typename Step>
double rayleigh_iteration(const Matrix& h, Step step) {
  std::vector<cplx> v(h.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / std::sqrt(1.0 + i);
  normalize(v);
  double value = dot(v, mat_vec(h, v)).real();
  for (int it = 0; it < 100000; ++it) {
    v = step(v);
    normalize(v);
    const double next = dot(v, mat_vec(h, v)).real();
    const bool settled = std::abs(next - value) <= 1e-15 * std::abs(next);
    value = next;
    if (settled && it > 8) break;
  }
  return value;
}

}  // namespace

FrameSystem::FrameSystem(RadialProfile window, LatticeSpec spec, bool normalized)
    : window_(std::move(window)), spec_(spec), normalized_(normalized) {
  spec_.validate();
  require(spec_.d == window_.dim(), "build_frame: lattice d does not match window dimension");
  require(window_.dim() >= 2, "build_frame: dimension must be >= 2");
  require(norm(window_) > 0.0, "build_frame: window must be nonzero");
  atoms_ = build_lattice(spec_);
  std::vector<std::optional<RadialProfile>> built(atoms_.size());
  parallel_for(atoms_.size(), [&](std::size_t i) {
    const OrbitPoint& p = atoms_[i].point;
    const double ph = std::numbers::pi * p.r * p.s * p.c;
    cplx scale(std::cos(ph), std::sin(ph));
    if (normalized_) scale *= std::sqrt(atoms_[i].mu);
    built[i] = scaled(scale, omega_apply(window_, p));
  });
  profiles_.reserve(atoms_.size());
  for (auto& p : built) profiles_.push_back(std::move(*p));
}

std::optional<std::size_t> FrameSystem::position(const LatticeIndex& idx) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), idx,
                                   [](const LatticeAtom& a, const LatticeIndex& b) {
                                     return a.index < b;
                                   });
  if (it == atoms_.end() || it->index != idx) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

FrameSystem build_frame(const RadialProfile& window, const LatticeSpec& spec, bool normalized) {
  return FrameSystem(window, spec, normalized);
}

CoeffVector analyze_vector(const RadialProfile& f, const FrameSystem& fr) {
  check_same_grid(f, fr.window(), "analyze");
  const std::vector<double> ones(fr.size(), 1.0);
  return weighted_analysis(f, fr, ones);
}

RadialProfile synthesize_vector(std::span<const cplx> c, const FrameSystem& fr) {
  require(c.size() == fr.size(), "synthesize: coefficient count does not match the frame");
  const std::vector<double> ones(fr.size(), 1.0);
  return weighted_synthesis(c, fr, ones);
}

CoeffSeq to_seq(std::span<const cplx> c, const FrameSystem& fr) {
  require(c.size() == fr.size(), "to_seq: coefficient count does not match the frame");
  CoeffSeq out;
  for (std::size_t i = 0; i < c.size(); ++i) out.entries.emplace(fr.atoms()[i].index, c[i]);
  return out;
}

CoeffVector to_vector(const CoeffSeq& c, const FrameSystem& fr) {
  CoeffVector out(fr.size());
  for (const auto& [idx, value] : c.entries) {
    const auto pos = fr.position(idx);
    if (!pos)
      throw ValidationError("synthesize: index (" + std::to_string(idx.j) + "," +
                            std::to_string(idx.k) + "," + std::to_string(idx.ell) +
                            ") is not an atom of the frame");
    out[*pos] = value;
  }
  return out;
}

CoeffSeq analyze(const RadialProfile& f, const FrameSystem& fr) {
  return to_seq(analyze_vector(f, fr), fr);
}

RadialProfile synthesize(const CoeffSeq& c, const FrameSystem& fr) {
  return synthesize_vector(to_vector(c, fr), fr);
}

RadialProfile frame_operator(const RadialProfile& f, const FrameSystem& fr) {
  return synthesize_vector(analyze_vector(f, fr), fr);
}

Reconstruction reconstruct(const RadialProfile& f, const FrameSystem& fr,
                           const ReconstructOptions& options) {
  check_same_grid(f, fr.window(), "reconstruct");
  require(options.tol > 0.0, "reconstruct: tol must be > 0");
  const double f_norm = norm(f);
  Reconstruction out{RadialProfile::zero(fr.grid_ptr()), CoeffVector(fr.size()), 0.0, 0, true, {}};
  if (f_norm == 0.0) {
    out.residual_history.push_back(0.0);
    return out;
  }

  std::vector<double> w(fr.size(), 1.0);
  if (options.jacobi)
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double n = norm(fr.profiles()[i]);
      w[i] = n > 0.0 ? 1.0 / n : 0.0;
    }

  CoeffVector y(fr.size());
  RadialProfile r = f;
  CoeffVector s = weighted_analysis(r, fr, w);
  CoeffVector p = s;
  double gamma = coeff_norm2(s);
  double r_norm = f_norm;
  out.residual_history.push_back(1.0);
  out.converged = false;
  while (out.iterations < options.max_iter) {
    if (r_norm <= options.tol * f_norm) {
      out.converged = true;
      break;
    }
    if (gamma == 0.0) break;
    const RadialProfile q = weighted_synthesis(p, fr, w);
    const double q_norm2 = std::pow(norm(q), 2);
    if (q_norm2 == 0.0) break;
    const double alpha = gamma / q_norm2;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * p[i];
    r = combine(1.0, r, -alpha, q);
    s = weighted_analysis(r, fr, w);
    const double gamma_next = coeff_norm2(s);
    const double beta = gamma_next / gamma;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s[i] + beta * p[i];
    gamma = gamma_next;
    r_norm = norm(r);
    ++out.iterations;
    out.residual_history.push_back(r_norm / f_norm);
  }
  if (!out.converged && r_norm <= options.tol * f_norm) out.converged = true;

  for (std::size_t i = 0; i < y.size(); ++i) out.coefficients[i] = w[i] * y[i];
  out.profile = synthesize_vector(out.coefficients, fr);
  out.relative_error = norm(combine(1.0, f, -1.0, out.profile)) / f_norm;
  return out;
}

std::vector<RadialProfile> laguerre_test_space(const GridPtr& grid, std::size_t count) {
  require(count >= 1, "laguerre_test_space: count must be >= 1");
  std::vector<RadialProfile> basis;
  for (std::size_t m = 0; m < count; ++m) {
    RadialProfile v = make_profile(grid, [m](double theta) -> cplx {
      return std::pow(theta, 2.0 * m) * std::exp(-std::numbers::pi * theta * theta);
    });
    for (int pass = 0; pass < 2; ++pass)
      for (const RadialProfile& e : basis) v = combine(1.0, v, -inner(v, e), e);
    const double nv = norm(v);
    require(nv > 1e-12, "laguerre_test_space: test functions became dependent");
    basis.push_back(scaled(1.0 / nv, v));
  }
  return basis;
}

FrameBounds frame_bounds(const FrameSystem& fr, std::size_t test_dim) {
  require(test_dim >= 1, "frame_bounds: test_dim must be >= 1");
  require(test_dim <= fr.size(), "frame_bounds: test_dim exceeds the number of atoms");
  const auto basis = laguerre_test_space(fr.grid_ptr(), test_dim);
  std::vector<CoeffVector> coeffs;
  for (const RadialProfile& e : basis) coeffs.push_back(analyze_vector(e, fr));
  Matrix h(test_dim, std::vector<cplx>(test_dim));
  for (std::size_t m = 0; m < test_dim; ++m)
    for (std::size_t n = 0; n < test_dim; ++n) h[m][n] = dot(coeffs[m], coeffs[n]);

  FrameBounds out;
  out.upper = rayleigh_iteration(h, [&](const std::vector<cplx>& v) { return mat_vec(h, v); });
  const auto l = cholesky(h);
  if (!l) return out;
  out.lower = rayleigh_iteration(h, [&](const std::vector<cplx>& v) { return cholesky_solve(*l, v); });
  return out;
}

Calibration calibrate_steps(const RadialProfile& window, int jk_max, std::size_t test_dim,
                            std::span<const double> steps, double max_ratio) {
  Calibration out;
  for (double step : steps) {
    const FrameSystem fr(window, LatticeSpec{step, step, window.dim(), jk_max}, true);
    const FrameBounds bounds = frame_bounds(fr, test_dim);
    out.rows.push_back({step, bounds});
    if (bounds.lower > 0.0 && bounds.ratio() < max_ratio && (!out.chosen || step > *out.chosen))
      out.chosen = step;
  }
  return out;
}

void write_coeff_csv(std::ostream& out, const CoeffSeq& c) {
  out << "j,k,ell,re,im\n";
  for (const auto& [idx, value] : c.entries) {
    out << idx.j << ',' << idx.k << ',' << idx.ell << ',' << format_double(value.real()) << ','
        << format_double(value.imag()) << '\n';
  }
}

std::string coeff_csv(const CoeffSeq& c) {
  std::ostringstream out;
  write_coeff_csv(out, c);
  return out.str();
}

}  // namespace radgab

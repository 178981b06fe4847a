#include "radgab/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "radgab/error.hpp"
#include "radgab/parallel.hpp"
#include "radgab/quadrature.hpp"

namespace radgab {

namespace {

constexpr double kPi = std::numbers::pi;

double slope_or_nan(std::span<const std::size_t> n, std::span<const double> err, double floor) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] >= 1 && err[i] > floor) {
      xs.push_back(static_cast<double>(n[i]));
      ys.push_back(err[i]);
    }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return fit_loglog(xs, ys).slope;
}

void check_n_list(std::span<const std::size_t> n_list, std::size_t limit, const char* where) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] > limit)
      throw ValidationError(std::string(where) + ": n=" + std::to_string(n_list[i]) +
                            " exceeds the number of atoms (" + std::to_string(limit) + ")");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw ValidationError(std::string(where) + ": n_list must be strictly increasing");
  }
}

// Projection errors of f onto the spans of the first n generators in `order`,
// for every n in n_list.
std::vector<double> nested_errors(const RadialProfile& f, const FrameSystem& fr,
                                  std::span<const std::size_t> order,
                                  std::span<const std::size_t> n_list) {
  NestedProjector proj(f);
  std::vector<double> out;
  std::size_t added = 0;
  for (std::size_t n : n_list) {
    while (added < n) proj.add(fr.profiles()[order[added++]]);
    out.push_back(proj.error());
  }
  return out;
}

std::vector<std::size_t> h_order(const FrameSystem& fr, const EmbeddingQuery& query) {
  return rearrangement_order(h_sequence(fr.atoms(), query, fr.spec().b));
}

std::vector<std::size_t> greedy_order(const RadialProfile& f, const FrameSystem& fr,
                                      double q_exp, double t_exp,
                                      const ReconstructOptions& options) {
  const Reconstruction rec = reconstruct(f, fr, options);
  if (!rec.converged)
    throw ConvergenceError("nterm_greedy: expansion coefficients did not converge (relative error " +
                           std::to_string(rec.relative_error) + ")");
  return rearrangement_order(greedy_weights(rec.coefficients, fr, q_exp, t_exp));
}

}  // namespace

NestedProjector::NestedProjector(const RadialProfile& target)
    : grid_(target.grid_ptr()), residual_(target.values().begin(), target.values().end()) {
  weights_.assign(grid_->weights().begin(), grid_->weights().end());
  for (double& w : weights_) w *= grid_->sphere_area();
}

cplx NestedProjector::dot(std::span<const cplx> a, std::span<const cplx> b) const {
  cplx sum{};
  for (std::size_t n = 0; n < a.size(); ++n) sum += weights_[n] * a[n] * std::conj(b[n]);
  return sum;
}

bool NestedProjector::add(const RadialProfile& generator) {
  require(generator.grid().same_as(*grid_), "NestedProjector: generator on a different grid");
  std::vector<cplx> v(generator.values().begin(), generator.values().end());
  const double original = std::sqrt(dot(v, v).real());
  std::vector<cplx> comp(basis_.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t l = 0; l < basis_.size(); ++l) {
      const cplx c = dot(v, basis_[l]);
      comp[l] += c;
      for (std::size_t n = 0; n < v.size(); ++n) v[n] -= c * basis_[l][n];
    }
  }
  const double rest = std::sqrt(dot(v, v).real());
  if (!(rest > 1e-10 * original)) {
    accepted_.push_back(false);
    return false;
  }
  for (cplx& x : v) x /= rest;
  comp.push_back(rest);
  const cplx b = dot(residual_, v);
  for (std::size_t n = 0; n < v.size(); ++n) residual_[n] -= b * v[n];
  beta_.push_back(b);
  basis_.push_back(std::move(v));
  r_.push_back(std::move(comp));
  accepted_.push_back(true);
  return true;
}

double NestedProjector::error() const { return std::sqrt(std::max(0.0, dot(residual_, residual_).real())); }

std::vector<cplx> NestedProjector::coefficients() const {
  // generator_k = sum_{l <= k} r_[k][l] basis_l, so P target = sum beta_l basis_l
  // has generator coefficients x with R^T x = beta (R upper triangular by columns).
  const std::size_t m = basis_.size();
  std::vector<cplx> x(m);
  for (std::size_t k = m; k-- > 0;) {
    cplx sum = beta_[k];
    for (std::size_t i = k + 1; i < m; ++i) sum -= r_[i][k] * x[i];
    x[k] = sum / r_[k][k];
  }
  std::vector<cplx> out;
  out.reserve(accepted_.size());
  std::size_t next = 0;
  for (bool used : accepted_) out.push_back(used ? x[next++] : cplx{});
  return out;
}

ApproxReport linear_approx(const RadialProfile& f, const FrameSystem& fr,
                           const EmbeddingQuery& query, std::span<const std::size_t> n_list) {
  check_same_grid(f, fr.window(), "linear_approx");
  check_n_list(n_list, fr.size(), "linear_approx");
  const auto order = h_order(fr, query);
  ApproxReport out;
  out.n_values.assign(n_list.begin(), n_list.end());
  out.errors = nested_errors(f, fr, order, n_list);
  out.reference_slope = -approx_number_exponent(query.p, query.q, query.d).to_double();
  out.fitted_slope = slope_or_nan(out.n_values, out.errors, 1e-12 * norm(f));
  return out;
}

std::vector<double> greedy_weights(std::span<const cplx> coefficients, const FrameSystem& fr,
                                   double q_exp, double t_exp) {
  require(coefficients.size() == fr.size(), "greedy_weights: coefficient count mismatch");
  require(q_exp >= 1.0, "greedy_weights: q must be >= 1");
  const double inv_q = std::isinf(q_exp) ? 0.0 : 1.0 / q_exp;
  std::vector<double> out(fr.size());
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const LatticeAtom& atom = fr.atoms()[i];
    double lambda = std::abs(coefficients[i]);
    if (fr.normalized()) lambda *= std::sqrt(atom.mu);
    out[i] = lambda * std::pow(1.0 + fr.spec().b * atom.index.k, t_exp) *
             std::pow(atom.mu, inv_q - 1.0);
  }
  return out;
}

NTermResult nterm_greedy(const RadialProfile& f, const FrameSystem& fr, std::size_t n,
                         double q_exp, double t_exp, const ReconstructOptions& options) {
  check_same_grid(f, fr.window(), "nterm_greedy");
  if (n > fr.size())
    throw ValidationError("nterm_greedy: n=" + std::to_string(n) +
                          " exceeds the number of atoms (" + std::to_string(fr.size()) + ")");
  NTermResult out;
  if (n == 0) {
    out.error = norm(f);
    return out;
  }
  const auto order = greedy_order(f, fr, q_exp, t_exp, options);
  NestedProjector proj(f);
  out.support.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(out.support.begin(), out.support.end());
  for (std::size_t i : out.support) proj.add(fr.profiles()[i]);
  const auto coeffs = proj.coefficients();
  for (std::size_t m = 0; m < out.support.size(); ++m)
    out.coefficients.entries.emplace(fr.atoms()[out.support[m]].index, coeffs[m]);
  out.error = proj.error();
  return out;
}

ApproxReport nterm_curve(const RadialProfile& f, const FrameSystem& fr,
                         const EmbeddingQuery& query, std::span<const std::size_t> n_list,
                         const ReconstructOptions& options) {
  check_same_grid(f, fr.window(), "nterm_curve");
  check_n_list(n_list, fr.size(), "nterm_curve");
  const auto order = greedy_order(f, fr, query.q.to_double(), query.t.to_double(), options);
  ApproxReport out;
  out.n_values.assign(n_list.begin(), n_list.end());
  out.errors = nested_errors(f, fr, order, n_list);
  out.reference_slope = -query.alpha().to_double();
  out.fitted_slope = slope_or_nan(out.n_values, out.errors, 1e-12 * norm(f));
  return out;
}

std::size_t radial_count_above(const RadialProfile& f, const FrameSystem& fr, double threshold) {
  require(!fr.normalized(), "radial_count_above: frame must be unnormalized");
  const auto c = analyze_vector(f, fr);
  return static_cast<std::size_t>(
      std::count_if(c.begin(), c.end(), [&](const cplx& v) { return std::abs(v) > threshold; }));
}

BaselineReport gabor_baseline_2d(const RadialFunction& f, double window_lambda, double a,
                                 double b, std::span<const std::size_t> n_list,
                                 const BaselineOptions& options) {
  require(static_cast<bool>(f), "gabor_baseline_2d: f is empty");
  require(window_lambda > 0.0, "gabor_baseline_2d: window lambda must be > 0");
  require(a > 0.0 && b > 0.0, "gabor_baseline_2d: a and b must be > 0");
  require(options.box > 0.0 && options.support > 0.0 && options.panel_width > 0.0 &&
              options.nodes_per_panel > 0,
          "gabor_baseline_2d: invalid options");

  // One-dimensional lattice values and the window factor g1.
  const int jm = static_cast<int>(std::floor(options.box / a + 1e-12));
  const int km = static_cast<int>(std::floor(options.box / b + 1e-12));
  const std::size_t nx = 2 * jm + 1, nw = 2 * km + 1;
  auto xval = [&](std::size_t i) { return a * (static_cast<int>(i) - jm); };
  auto wval = [&](std::size_t i) { return b * (static_cast<int>(i) - km); };
  const double g_amp = std::sqrt(std::sqrt(2.0 * window_lambda));
  auto g1 = [&](double u) { return g_amp * std::exp(-kPi * window_lambda * u * u); };

  // Tensor rule for f on [-support, support]^2.
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * options.support / options.panel_width));
  const QuadratureRule rule =
      composite_gauss_legendre(panels, options.nodes_per_panel, -options.support, options.support);
  const std::size_t nt = rule.size();
  std::vector<cplx> fvals(nt * nt);
  double f_norm2 = 0.0;
  for (std::size_t p = 0; p < nt; ++p)
    for (std::size_t q = 0; q < nt; ++q) {
      fvals[p * nt + q] = f(std::hypot(rule.nodes[p], rule.nodes[q]));
      f_norm2 += rule.weights[p] * rule.weights[q] * std::norm(fvals[p * nt + q]);
    }
  // phase[i][p] = w_p exp(-2 pi i omega_i t_p)
  std::vector<cplx> phase(nw * nt);
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t p = 0; p < nt; ++p) {
      const double ph = -2.0 * kPi * wval(i) * rule.nodes[p];
      phase[i * nt + p] = rule.weights[p] * cplx(std::cos(ph), std::sin(ph));
    }
  std::vector<double> gshift(nx * nt);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t p = 0; p < nt; ++p) gshift[i * nt + p] = g1(rule.nodes[p] - xval(i));

  // coeff[(x1, x2, w1, w2)] = sum_{p,q} f(t_p, t_q) g1(t_p - x1) g1(t_q - x2) phase phase.
  const std::size_t total = nx * nx * nw * nw;
  std::vector<cplx> coeff(total);
  parallel_for(nx * nx, [&](std::size_t xi) {
    const std::size_t i1 = xi / nx, i2 = xi % nx;
    std::vector<cplx> partial(nw * nt);  // sum over q for each (w2, p)
    for (std::size_t p = 0; p < nt; ++p) {
      const double gp = gshift[i1 * nt + p];
      if (gp == 0.0) continue;
      for (std::size_t w2 = 0; w2 < nw; ++w2) {
        cplx sum{};
        const cplx* ph = &phase[w2 * nt];
        for (std::size_t q = 0; q < nt; ++q) sum += fvals[p * nt + q] * gshift[i2 * nt + q] * ph[q];
        partial[w2 * nt + p] = gp * sum;
      }
    }
    for (std::size_t w1 = 0; w1 < nw; ++w1)
      for (std::size_t w2 = 0; w2 < nw; ++w2) {
        cplx sum{};
        for (std::size_t p = 0; p < nt; ++p) sum += phase[w1 * nt + p] * partial[w2 * nt + p];
        coeff[((i1 * nx + i2) * nw + w1) * nw + w2] = sum;
      }
  });

  BaselineReport out;
  out.lattice_points = total;
  std::vector<double> mags(total);
  for (std::size_t i = 0; i < total; ++i) mags[i] = std::abs(coeff[i]);
  out.coefficients_above_threshold = static_cast<std::size_t>(
      std::count_if(mags.begin(), mags.end(), [&](double v) { return v > options.threshold; }));
  check_n_list(n_list, total, "gabor_baseline_2d");

  // One-dimensional Gram entries <M_w T_x g1, M_v T_y g1> have the closed form
  // exp(pi i (w - v)(x + y)) exp(-pi lambda (x - y)^2 / 2 - pi (w - v)^2 / (2 lambda)).
  auto gram1 = [&](double x, double w, double y, double v) {
    const double ph = kPi * (w - v) * (x + y);
    const double mag = std::exp(-kPi * window_lambda * (x - y) * (x - y) / 2.0 -
                                kPi * (w - v) * (w - v) / (2.0 * window_lambda));
    return mag * cplx(std::cos(ph), std::sin(ph));
  };
  auto unpack = [&](std::size_t id) {
    const std::size_t w2 = id % nw, w1 = (id / nw) % nw, i2 = (id / (nw * nw)) % nx,
                      i1 = id / (nw * nw * nx);
    return std::array<double, 4>{xval(i1), xval(i2), wval(w1), wval(w2)};
  };
  auto gram = [&](std::size_t i, std::size_t j) {
    const auto u = unpack(i), v = unpack(j);
    return gram1(u[0], u[2], v[0], v[2]) * gram1(u[1], u[3], v[1], v[3]);
  };

  const auto order = rearrangement_order(mags);
  // Incremental Cholesky L L^* = A, A_{km} = <atom_m, atom_k>, over the selected
  // atoms; z = L^{-1} (<f, atom_k>)_k, so the squared distance is |f|^2 - |z|^2.
  std::vector<std::size_t> chosen;
  std::vector<std::vector<cplx>> lrows;
  std::vector<cplx> z;
  double captured = 0.0;
  std::size_t added = 0;
  out.report.n_values.assign(n_list.begin(), n_list.end());
  for (std::size_t n : n_list) {
    while (added < n) {
      const std::size_t id = order[added++];
      std::vector<cplx> row(chosen.size());
      for (std::size_t m = 0; m < chosen.size(); ++m) {
        cplx sum = gram(chosen[m], id);
        for (std::size_t l = 0; l < m; ++l) sum -= row[l] * std::conj(lrows[m][l]);
        row[m] = sum / lrows[m][m].real();
      }
      double diag = gram(id, id).real();
      for (const cplx& v : row) diag -= std::norm(v);
      if (!(diag > 1e-12)) continue;
      row.push_back(std::sqrt(diag));
      cplx zk = coeff[id];
      for (std::size_t l = 0; l < z.size(); ++l) zk -= row[l] * z[l];
      zk /= row.back().real();
      captured += std::norm(zk);
      z.push_back(zk);
      chosen.push_back(id);
      lrows.push_back(std::move(row));
    }
    out.report.errors.push_back(std::sqrt(std::max(0.0, f_norm2 - captured)));
  }
  out.report.reference_slope = std::numeric_limits<double>::quiet_NaN();
  out.report.fitted_slope =
      slope_or_nan(out.report.n_values, out.report.errors, 1e-12 * std::sqrt(f_norm2));
  return out;
}

}  // namespace radgab

#include "radgab/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "radgab/error.hpp"
#include "radgab/quadrature.hpp"
#include "radgab/radial.hpp"

namespace radgab {

namespace {

// Panels [0,1], [1,2], [2,4], ... clipped at radius, 24 nodes each.
QuadratureRule graded_rule(double radius) {
  QuadratureRule out;
  double lo = 0.0, hi = std::min(1.0, radius);
  while (lo < radius) {
    const QuadratureRule panel = gauss_legendre(24, lo, hi);
    out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    lo = hi;
    hi = std::min(radius, std::max(2.0 * hi, 1.0));
  }
  return out;
}

double pgq_integral(double gamma, int d, double radius, WeightFamily family) {
  const QuadratureRule rule = graded_rule(radius);
  const double area = sphere_area(d);
  if (family == WeightFamily::Frequency) {
    double radial = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double rho = rule.nodes[i];
      radial += rule.weights[i] * std::pow(1.0 + rho, gamma) * std::pow(rho, d - 1);
    }
    const double ball = area / d * std::pow(radius, d);
    return ball * area * radial;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    double row = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double v = rule.nodes[k];
      row += rule.weights[k] * std::pow(1.0 + u + v, gamma) * std::pow(v, d - 1);
    }
    total += rule.weights[i] * std::pow(u, d - 1) * row;
  }
  return area * area * total;
}

void require_non_increasing(std::span<const double> b, const char* where) {
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i] > b[i - 1])
      throw ValidationError(std::string(where) + ": sequence must be non-increasing (position " +
                            std::to_string(i + 1) + ")");
  for (double v : b)
    if (!(v >= 0.0)) throw ValidationError(std::string(where) + ": entries must be >= 0");
}

}  // namespace

void EmbeddingQuery::validate() const {
  require(p >= Exponent(Rational(1)), "embed: p must be >= 1");
  require(q >= Exponent(Rational(1)), "embed: q must be >= 1");
  require(d >= 2, "embed: d must be >= 2");
}

Rational EmbeddingQuery::alpha() const { return p.reciprocal() - q.reciprocal(); }

std::string to_string(EmbeddingStatus status) {
  switch (status) {
    case EmbeddingStatus::NotEmbedded:
      return "NotEmbedded";
    case EmbeddingStatus::Continuous:
      return "Continuous";
    case EmbeddingStatus::Compact:
      return "Compact";
  }
  return "NotEmbedded";
}

EmbeddingVerdict classify_embedding(const EmbeddingQuery& query) {
  query.validate();
  EmbeddingVerdict out;
  out.alpha = query.alpha();
  const Rational gap = query.t - query.s;
  if (query.p <= query.q) {
    require(query.family == WeightFamily::Frequency,
            "embed: the phase-space weight family is only classified for p > q");
    out.threshold = out.alpha * Rational(query.d - 1);
    if (gap <= out.threshold) out.status = EmbeddingStatus::Continuous;
    if (query.p < query.q && gap < out.threshold) out.status = EmbeddingStatus::Compact;
    return out;
  }
  const Rational beta = -out.alpha;
  out.threshold = Rational(-2 * query.d) * beta;
  if (query.family == WeightFamily::PhaseSpace && gap < out.threshold)
    out.status = EmbeddingStatus::Compact;
  return out;
}

std::vector<double> h_sequence(std::span<const LatticeAtom> atoms, const EmbeddingQuery& query,
                               double b_step) {
  query.validate();
  require(b_step > 0.0, "h_sequence: b must be > 0");
  const Rational alpha = query.alpha();
  require(alpha >= Rational(0), "h_sequence: requires p <= q");
  const double gap = (query.t - query.s).to_double();
  const double a = alpha.to_double();
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const LatticeAtom& atom : atoms)
    out.push_back(std::pow(1.0 + b_step * atom.index.k, gap) * std::pow(atom.mu, -a));
  return out;
}

std::vector<std::size_t> rearrangement_order(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return v[x] > v[y]; });
  return order;
}

std::vector<double> rearrange(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Rational entropy_exponent(const Exponent& p, const Exponent& q, const Exponent& r) {
  require(p <= q, "entropy_exponent: requires p <= q");
  return r.reciprocal() + p.reciprocal() - q.reciprocal();
}

Rational radial_entropy_decay(const Exponent& p, const Exponent& q, int d) {
  return approx_number_exponent(p, q, d) + p.reciprocal() - q.reciprocal();
}

Rational approx_number_exponent(const Exponent& p, const Exponent& q, int d) {
  require(p <= q, "approx_number_exponent: requires p <= q");
  require(d >= 2, "approx_number_exponent: d must be >= 2");
  return Rational(d - 1, 3) * (p.reciprocal() - q.reciprocal());
}

PgqDiagnostic pgq_diagnostic(const Exponent& p, const Exponent& q, double s, double t, int d,
                             double radius, WeightFamily family) {
  require(p > q, "pgq_diagnostic: requires p > q");
  require(d >= 1, "pgq_diagnostic: d must be >= 1");
  require(radius > 0.0, "pgq_diagnostic: R must be > 0");
  PgqDiagnostic out;
  out.beta = (q.reciprocal() - p.reciprocal()).to_double();
  const double gamma = (t - s) / out.beta;
  out.value = pgq_integral(gamma, d, radius, family);
  out.ratio = out.value / pgq_integral(gamma, d, 0.5 * radius, family);
  return out;
}

std::vector<double> sigma_tails(std::span<const double> b, double q) {
  require_non_increasing(b, "sigma_tail");
  require(q > 0.0, "sigma_tail: q must be > 0");
  std::vector<double> out(b.size());
  if (std::isinf(q)) {
    std::copy(b.begin(), b.end(), out.begin());
    return out;
  }
  double sum = 0.0;
  for (std::size_t n = b.size(); n-- > 0;) {
    sum += std::pow(b[n], q);
    out[n] = std::pow(sum, 1.0 / q);
  }
  return out;
}

double sigma_tail(std::span<const double> b, std::size_t n, double q) {
  require(n >= 1, "sigma_tail: n must be >= 1");
  require_non_increasing(b, "sigma_tail");
  if (n > b.size()) return 0.0;
  return sigma_tails(b.subspan(n - 1), q).front();
}

InequalitySides nonlinear_lower_sides(std::span<const double> b, double p, double q) {
  require(p > 0.0 && q > 0.0, "nonlinear_lower_sides: p and q must be > 0");
  const std::vector<double> tails = sigma_tails(b, q);
  const double alpha = (std::isinf(p) ? 0.0 : 1.0 / p) - (std::isinf(q) ? 0.0 : 1.0 / q);
  InequalitySides out;
  if (std::isinf(p)) {
    out.left = b.empty() ? 0.0 : b.front();
    for (std::size_t n = 1; n <= tails.size(); ++n)
      out.right = std::max(out.right, std::pow(static_cast<double>(n), alpha) * tails[n - 1]);
    return out;
  }
  double norm_p = 0.0, sum = 0.0;
  for (double v : b) norm_p += std::pow(v, p);
  for (std::size_t n = 1; n <= tails.size(); ++n)
    sum += std::pow(std::pow(static_cast<double>(n), alpha) * tails[n - 1], p) / static_cast<double>(n);
  out.left = std::pow(2.0, -1.0 / p) * std::pow(norm_p, 1.0 / p);
  out.right = std::pow(sum, 1.0 / p);
  return out;
}

DecayFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "fit_loglog: size mismatch");
  require(x.size() >= 2, "fit_loglog: need at least two points");
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "fit_loglog: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  DecayFit out;
  out.points = n;
  const double denom = n * sxx - sx * sx;
  require(denom > 0.0, "fit_loglog: x values must not all coincide");
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::log(y[i]) - (out.intercept + out.slope * std::log(x[i]));
    ss += e * e;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

DecayFit fit_decay(std::span<const double> s) {
  std::vector<double> xs, ys;
  for (std::size_t n = 16; n <= s.size() / 2; n *= 2) {
    if (!(s[n - 1] > 0.0)) break;
    xs.push_back(static_cast<double>(n));
    ys.push_back(s[n - 1]);
  }
  require(xs.size() >= 2, "fit_decay: sequence too short for a dyadic fit on [16, n/2]");
  return fit_loglog(xs, ys);
}

DecayFit truncation_sup_growth(const EmbeddingQuery& query, double a_step, double b_step,
                               std::span<const int> levels) {
  require(levels.size() >= 2, "truncation_sup_growth: need at least two levels");
  const int top = *std::max_element(levels.begin(), levels.end());
  const auto atoms = build_lattice(LatticeSpec{a_step, b_step, query.d, top});
  const auto h = h_sequence(atoms, query, b_step);
  std::vector<double> xs, ys;
  for (int level : levels) {
    double sup = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i].index.j + atoms[i].index.k <= level) sup = std::max(sup, h[i]);
    xs.push_back(level);
    ys.push_back(sup);
  }
  return fit_loglog(xs, ys);
}

}  // namespace radgab

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "radgab/lattice.hpp"
#include "radgab/rational.hpp"

namespace radgab {

/// Weight families on phase space: m_s(x, omega) = (1 + |omega|)^s and
/// v_s(x, omega) = (1 + |x| + |omega|)^s.
enum class WeightFamily { Frequency, PhaseSpace };

/// Embedding of the radial modulation space M^p_{m_s} into M^q_{m_t}.
struct EmbeddingQuery {
  Exponent p{Rational(2)};
  Exponent q{Rational(2)};
  Rational s{0};
  Rational t{0};
  int d = 2;
  WeightFamily family = WeightFamily::Frequency;

  void validate() const;
  /// 1/p - 1/q.
  Rational alpha() const;
};

enum class EmbeddingStatus { NotEmbedded, Continuous, Compact };

std::string to_string(EmbeddingStatus status);

struct EmbeddingVerdict {
  EmbeddingStatus status = EmbeddingStatus::NotEmbedded;
  Rational alpha;      // 1/p - 1/q
  Rational threshold;  // alpha (d - 1) when p <= q; -2d beta for p > q
};

/// Exact verdict. For p <= q: continuous iff t - s <= alpha (d - 1), compact iff
/// in addition p < q and the inequality is strict (family must be Frequency).
/// For p > q, with beta = 1/q - 1/p, the embedding needs (v/m)^{1/beta} to be
/// integrable over R^{2d}: never for the Frequency family, and iff
/// (t - s) / beta < -2d for the PhaseSpace family, in which case it is compact.
EmbeddingVerdict classify_embedding(const EmbeddingQuery& query);

/// h_i = (1 + b_step k)^{t - s} mu_i^{-alpha} over the atoms. Requires p <= q.
std::vector<double> h_sequence(std::span<const LatticeAtom> atoms, const EmbeddingQuery& query,
                               double b_step);

/// Non-increasing rearrangement; ties keep their original order.
std::vector<double> rearrange(std::span<const double> v);

/// The permutation used by rearrange: out[n] is the source position of the
/// n-th largest entry.
std::vector<std::size_t> rearrangement_order(std::span<const double> v);

/// 1/s = 1/r + 1/p - 1/q. Requires p <= q.
Rational entropy_exponent(const Exponent& p, const Exponent& q, const Exponent& r);

/// Entropy decay rate of the radial embedding: entropy_exponent with
/// 1/r = (d - 1)/3 (1/p - 1/q), that is (d + 2)/3 (1/p - 1/q).
Rational radial_entropy_decay(const Exponent& p, const Exponent& q, int d);

/// (d - 1)/3 (1/p - 1/q). Requires p <= q.
Rational approx_number_exponent(const Exponent& p, const Exponent& q, int d);

struct PgqDiagnostic {
  double value = 0.0;   // integral over the product of balls of radius R
  double ratio = 0.0;   // value(R) / value(R / 2)
  double beta = 0.0;    // 1/q - 1/p
};

/// Integral of ((v_t / v_s))^{1/beta} over {|x| <= R} x {|omega| <= R} in R^{2d}
/// for p > q, with growth ratio against radius R / 2 as a divergence signal.
PgqDiagnostic pgq_diagnostic(const Exponent& p, const Exponent& q, double s, double t, int d,
                             double radius, WeightFamily family = WeightFamily::Frequency);

/// (sum_{k >= n} b_k^q)^{1/q}, 1-based; sup of the tail for q = inf. Rejects
/// increasing input.
double sigma_tail(std::span<const double> b, std::size_t n, double q);

/// All tails sigma_{n,q}, n = 1..size.
std::vector<double> sigma_tails(std::span<const double> b, double q);

struct InequalitySides {
  double left = 0.0;   // 2^{-1/p} |b|_p
  double right = 0.0;  // (sum_n (n^alpha sigma_{n,q}(b))^p / n)^{1/p}
  bool holds() const { return left <= right; }
};

/// Both sides of the lower n-term inequality for a non-increasing b, with
/// alpha = 1/p - 1/q. p = inf uses sup norms.
InequalitySides nonlinear_lower_sides(std::span<const double> b, double p, double q);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual of the fit
  std::size_t points = 0;
};

/// Least squares of log y_i on log x_i.
DecayFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Fit of log s_n on log n over dyadic n in [16, size / 2]; s is 1-based, so
/// s_n = s[n - 1]. Zero entries end the usable range.
DecayFit fit_decay(std::span<const double> s);

/// Growth of sup h over the truncations j + k <= J for each J in `levels`:
/// slope of log sup against log J. Bounded h gives a slope near 0.
DecayFit truncation_sup_growth(const EmbeddingQuery& query, double a_step, double b_step,
                               std::span<const int> levels);

}  // namespace radgab

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radgab/embeddings.hpp"
#include "radgab/frames.hpp"
#include "radgab/omega.hpp"

namespace radgab {

struct ApproxReport {
  std::vector<std::size_t> n_values;
  std::vector<double> errors;
  double fitted_slope = 0.0;     // NaN when fewer than two usable points
  double reference_slope = 0.0;
};

/// Orthogonal projection onto nested spans V_1 ⊂ V_2 ⊂ ... of profiles on one
/// grid, by Gram-Schmidt with one reorthogonalization pass.
class NestedProjector {
 public:
  explicit NestedProjector(const RadialProfile& target);

  /// Adds a generator. Returns false (and ignores it) when it lies in the
  /// current span up to relative size 1e-10.
  bool add(const RadialProfile& generator);

  /// |target - P target|.
  double error() const;
  std::size_t rank() const { return basis_.size(); }

  /// Coefficients of P target with respect to the generators passed to add(),
  /// in order; ignored generators get 0.
  std::vector<cplx> coefficients() const;

 private:
  cplx dot(std::span<const cplx> a, std::span<const cplx> b) const;

  GridPtr grid_;
  std::vector<double> weights_;  // grid weights times the sphere area
  std::vector<cplx> residual_;
  std::vector<std::vector<cplx>> basis_;
  std::vector<std::vector<cplx>> r_;  // r_[k][l]: component of generator k on basis l
  std::vector<cplx> beta_;            // <target, basis_k>
  std::vector<bool> accepted_;
};

/// Linear approximation along V_n = span of the first n atoms in the order of
/// the non-increasing rearrangement of h (ties by lexicographic index). The
/// error is dist(f, V_n) in L^2_rad. reference_slope = -(d-1)/3 (1/p - 1/q).
ApproxReport linear_approx(const RadialProfile& f, const FrameSystem& fr,
                           const EmbeddingQuery& query, std::span<const std::size_t> n_list);

/// Greedy weights b(i) = |lambda_i| (1 + b k_i)^t mu_i^{1/q - 1}, where
/// lambda are the expansion coefficients with respect to the unnormalized
/// atoms exp(pi i r s c) Omega(x_i) g.
std::vector<double> greedy_weights(std::span<const cplx> coefficients, const FrameSystem& fr,
                                   double q_exp, double t_exp);

struct NTermResult {
  CoeffSeq coefficients;  // best coefficients on the selected atoms
  double error = 0.0;     // L^2_rad distance of f to their span
  std::vector<std::size_t> support;
};

/// Keeps the n atoms with the largest greedy weights and projects f onto their
/// span. Throws ValidationError when n exceeds the atom count.
NTermResult nterm_greedy(const RadialProfile& f, const FrameSystem& fr, std::size_t n,
                         double q_exp, double t_exp, const ReconstructOptions& options = {});

/// nterm_greedy errors for every n in n_list (nested supports). The reference
/// slope is -(1/p - 1/q).
ApproxReport nterm_curve(const RadialProfile& f, const FrameSystem& fr,
                         const EmbeddingQuery& query, std::span<const std::size_t> n_list,
                         const ReconstructOptions& options = {});

struct BaselineOptions {
  double box = 4.0;        // keep lattice points with |a j_i|, |b k_i| <= box
  double support = 4.0;    // f is integrated over [-support, support]^2
  double panel_width = 0.25;
  std::size_t nodes_per_panel = 10;
  double threshold = 1e-6;  // for the coefficient count
};

struct BaselineReport {
  ApproxReport report;
  std::size_t lattice_points = 0;
  std::size_t coefficients_above_threshold = 0;
};

/// Standard Gabor system M_{b k} T_{a j} g on a box of a Z^2 x b Z^2 in d = 2,
/// with the separable window g(t) = (2 lambda)^{1/2} exp(-pi lambda |t|^2).
/// Coefficients <f, M T g> come from tensor quadrature; n-term errors are the
/// distances of f to the span of the n largest-coefficient atoms, computed from
/// the Gram matrix.
BaselineReport gabor_baseline_2d(const RadialFunction& f, double window_lambda, double a,
                                 double b, std::span<const std::size_t> n_list,
                                 const BaselineOptions& options = {});

/// Number of atoms of an unnormalized frame with |<f, atom_i>| > threshold.
std::size_t radial_count_above(const RadialProfile& f, const FrameSystem& fr, double threshold);

}  // namespace radgab

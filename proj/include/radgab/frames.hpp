#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radgab/lattice.hpp"
#include "radgab/radial.hpp"

namespace radgab {

/// Truncated radial Gabor system: atoms exp(pi i r s c) Omega(x_i) g, scaled
/// by sqrt(mu_i) when normalized. Immutable after construction.
class FrameSystem {
 public:
  FrameSystem(RadialProfile window, LatticeSpec spec, bool normalized);

  const RadialProfile& window() const { return window_; }
  const LatticeSpec& spec() const { return spec_; }
  bool normalized() const { return normalized_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<LatticeAtom>& atoms() const { return atoms_; }
  const std::vector<RadialProfile>& profiles() const { return profiles_; }
  const GridPtr& grid_ptr() const { return window_.grid_ptr(); }

  /// Position of idx in atoms(), if present.
  std::optional<std::size_t> position(const LatticeIndex& idx) const;

 private:
  RadialProfile window_;
  LatticeSpec spec_;
  bool normalized_;
  std::vector<LatticeAtom> atoms_;
  std::vector<RadialProfile> profiles_;
};

FrameSystem build_frame(const RadialProfile& window, const LatticeSpec& spec, bool normalized);

struct CoeffSeq {
  std::map<LatticeIndex, cplx> entries;
};

/// Coefficients in atom order, as used internally.
using CoeffVector = std::vector<cplx>;

CoeffVector analyze_vector(const RadialProfile& f, const FrameSystem& fr);
RadialProfile synthesize_vector(std::span<const cplx> c, const FrameSystem& fr);

CoeffSeq to_seq(std::span<const cplx> c, const FrameSystem& fr);
CoeffVector to_vector(const CoeffSeq& c, const FrameSystem& fr);

/// entries[i] = <f, atom_i>.
CoeffSeq analyze(const RadialProfile& f, const FrameSystem& fr);

/// sum_i c_i atom_i. Throws ValidationError for an index outside the frame.
RadialProfile synthesize(const CoeffSeq& c, const FrameSystem& fr);

/// S f = sum_i <f, atom_i> atom_i.
RadialProfile frame_operator(const RadialProfile& f, const FrameSystem& fr);

struct ReconstructOptions {
  double tol = 1e-6;
  std::size_t max_iter = 5000;
  /// Scale atoms to unit norm inside the iteration. The returned expansion is
  /// then no longer the canonical-dual one.
  bool jacobi = false;
};

struct Reconstruction {
  RadialProfile profile;
  CoeffVector coefficients;  // expansion coefficients, atom order
  double relative_error = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // |f - T c_k| / |f|, k = 0, 1, ...
};

/// Solves T c = f for the minimum-norm c by CGLS, T the synthesis operator.
/// Started from c = 0, the limit is c_i = <f, S^{-1} atom_i>, and the residual
/// norm is non-increasing. Never throws on non-convergence; check `converged`.
Reconstruction reconstruct(const RadialProfile& f, const FrameSystem& fr,
                           const ReconstructOptions& options = {});

/// The first `count` functions theta^{2m} exp(-pi theta^2), orthonormalized.
std::vector<RadialProfile> laguerre_test_space(const GridPtr& grid, std::size_t count);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  double ratio() const { return upper / lower; }
};

/// Extreme Rayleigh quotients of S on the test space, by power iteration for the
/// upper and Cholesky-based inverse iteration for the lower bound.
FrameBounds frame_bounds(const FrameSystem& fr, std::size_t test_dim);

inline constexpr double kDefaultCalibrationStepValues[] = {1.0, 0.75, 0.5, 0.35, 0.25};
inline constexpr std::span<const double> kDefaultCalibrationSteps{kDefaultCalibrationStepValues};

struct CalibrationRow {
  double step = 0.0;
  FrameBounds bounds;
};

struct Calibration {
  std::vector<CalibrationRow> rows;
  std::optional<double> chosen;  // largest a = b with B/A < max_ratio
};

/// Scans a = b over `steps` and reports the frame-bound estimates.
Calibration calibrate_steps(const RadialProfile& window, int jk_max, std::size_t test_dim,
                            std::span<const double> steps = kDefaultCalibrationSteps,
                            double max_ratio = 100.0);

/// CSV with header "j,k,ell,re,im".
void write_coeff_csv(std::ostream& out, const CoeffSeq& c);
std::string coeff_csv(const CoeffSeq& c);

}  // namespace radgab

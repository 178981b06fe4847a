#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radgab/omega.hpp"

namespace radgab {

struct LatticeIndex {
  int j = 0;
  int k = 0;
  int ell = 0;

  auto operator<=>(const LatticeIndex&) const = default;
};

struct LatticeSpec {
  double a = 0.5;
  double b = 0.5;
  int d = 2;
  int jk_max = 8;  // keep j + k <= jk_max

  void validate() const;
};

struct LatticeAtom {
  LatticeIndex index;
  OrbitPoint point;
  double mu = 1.0;
};

/// Number of angular steps N(j, k); zero on the boundary rows j = 0 or k = 0.
int n_count(int j, int k);

/// sin(pi ell / 2N(j,k)), and 1 on the boundary rows.
double lattice_cosine(const LatticeIndex& idx);

/// Measure weight mu_{j,k,ell}.
double mu_weight(const LatticeIndex& idx, int d);

/// All atoms with j + k <= jk_max in lexicographic (j, k, ell) order.
std::vector<LatticeAtom> build_lattice(const LatticeSpec& spec);

/// sum over j + k <= n of (2 N(j,k) + 1).
std::int64_t index_count(int n);

struct CoveringOptions {
  std::size_t angular_samples = 1024;
  /// Also try the mirrored pair (x, omega) -> (Px, P omega). In d = 2 the
  /// lattice only stores (r, s, c), which fixes the pair up to O(2), not SO(2).
  bool allow_reflection = true;
};

/// min over atoms and rotation angles of
///   max(|R_{-psi} x - x_i| / a, |R_{-psi} omega - omega_i| / b),
/// restricted to atoms passing the radial prefilter. The search stops at the
/// first value <= 1. Infinity when no atom
/// passes it. A value <= 1 means (x, omega) is covered.
double covering_margin(const Vec2& x, const Vec2& omega, const LatticeSpec& spec,
                       const CoveringOptions& options = {});

/// covering_margin(...) <= 1. Requires spec.d == 2.
bool covered_2d(const Vec2& x, const Vec2& omega, const LatticeSpec& spec,
                const CoveringOptions& options = {});

/// CSV with header "j,k,ell,r,s,c,mu".
void write_lattice_csv(std::ostream& out, const std::vector<LatticeAtom>& atoms);
std::string lattice_csv(const std::vector<LatticeAtom>& atoms);

}  // namespace radgab

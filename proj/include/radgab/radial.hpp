#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace radgab {

using cplx = std::complex<double>;

/// f0 in f(x) = f0(|x|).
using RadialFunction = std::function<cplx(double)>;

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2), d >= 1.
double sphere_area(int d);

/// Shared sample grid for radial profiles: composite Gauss-Legendre panels of
/// eight nodes on [0, theta_max], weights carrying the theta^{d-1} factor.
class RadialGrid {
 public:
  static constexpr std::size_t kNodesPerPanel = 8;

  RadialGrid(int dim, double theta_max, std::size_t n_points);

  int dim() const { return dim_; }
  double theta_max() const { return theta_max_; }
  std::size_t size() const { return radii_.size(); }
  double sphere_area() const { return area_; }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> weights() const { return weights_; }

  bool same_as(const RadialGrid& other) const;

 private:
  int dim_;
  double theta_max_;
  double area_;
  std::vector<double> radii_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dim, double theta_max = 8.0, std::size_t n_points = 1024);

/// Radial function sampled on a RadialGrid, optionally carrying the closed
/// form it was sampled from. Immutable once built.
class RadialProfile {
 public:
  RadialProfile(GridPtr grid, std::vector<cplx> values, RadialFunction analytic = {},
                std::string analytic_tag = {});

  static RadialProfile zero(GridPtr grid);

  int dim() const { return grid_->dim(); }
  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  bool has_analytic() const { return static_cast<bool>(analytic_); }
  const std::string& analytic_tag() const { return tag_; }

  /// Off-grid evaluation: the closed form when present, otherwise a not-a-knot
  /// spline through the samples; zero beyond theta_max.
  RadialFunction evaluator() const;

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
  RadialFunction analytic_;
  std::string tag_;
};

/// Samples `evaluator` on a fresh grid and keeps it as the profile's closed form.
RadialProfile make_profile(int d, double theta_max, std::size_t n_points,
                           const RadialFunction& evaluator, std::string tag = {});

/// Samples `evaluator` on an existing grid.
RadialProfile make_profile(const GridPtr& grid, const RadialFunction& evaluator,
                           std::string tag = {});

/// amplitude * exp(-pi * lambda * theta^2).
RadialFunction gaussian(double lambda, cplx amplitude = 1.0);

/// 2^{d/4} exp(-pi theta^2), unit norm in L^2(R^d).
RadialFunction normalized_gaussian(int d);

/// <f, g> in L^2(R^d): |S^{d-1}| sum_n w_n f0(theta_n) conj(g0(theta_n)).
cplx inner(const RadialProfile& f, const RadialProfile& g);

double norm(const RadialProfile& f);

/// alpha * f + beta * g on the common grid; the closed form is dropped.
RadialProfile combine(cplx alpha, const RadialProfile& f, cplx beta, const RadialProfile& g);

RadialProfile scaled(cplx alpha, const RadialProfile& f);

/// max_n |f0(theta_n) - g0(theta_n)|.
double max_abs_diff(const RadialProfile& f, const RadialProfile& g);

/// CSV with header "theta,re,im", one row per grid node.
void write_profile_csv(std::ostream& out, const RadialProfile& f);
std::string profile_csv(const RadialProfile& f);

/// Reads a profile written by write_profile_csv. The theta column must match
/// `grid` node by node.
RadialProfile read_profile_csv(std::istream& in, const GridPtr& grid);

void check_same_grid(const RadialProfile& f, const RadialProfile& g, const char* where);

}  // namespace radgab

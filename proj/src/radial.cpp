#include "radgab/radial.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "radgab/csv.hpp"
#include "radgab/error.hpp"
#include "radgab/quadrature.hpp"
#include "radgab/spline.hpp"

namespace radgab {

double sphere_area(int d) {
  require(d >= 1, "sphere_area: d must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

RadialGrid::RadialGrid(int dim, double theta_max, std::size_t n_points)
    : dim_(dim), theta_max_(theta_max), area_(0.0) {
  require(dim >= 1, "RadialGrid: dim must be >= 1");
  require(theta_max > 0.0, "RadialGrid: theta_max must be > 0");
  require(n_points >= 16, "RadialGrid: n_points must be >= 16");
  require(n_points % kNodesPerPanel == 0, "RadialGrid: n_points must be a multiple of 8");
  area_ = radgab::sphere_area(dim);
  QuadratureRule rule =
      composite_gauss_legendre(n_points / kNodesPerPanel, kNodesPerPanel, 0.0, theta_max);
  radii_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);
  for (std::size_t i = 0; i < radii_.size(); ++i)
    weights_[i] *= std::pow(radii_[i], dim - 1);
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  return this == &other || (dim_ == other.dim_ && theta_max_ == other.theta_max_ &&
                            radii_.size() == other.radii_.size());
}

GridPtr make_grid(int dim, double theta_max, std::size_t n_points) {
  return std::make_shared<const RadialGrid>(dim, theta_max, n_points);
}

RadialProfile::RadialProfile(GridPtr grid, std::vector<cplx> values, RadialFunction analytic,
                             std::string analytic_tag)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      analytic_(std::move(analytic)),
      tag_(std::move(analytic_tag)) {
  require(grid_ != nullptr, "RadialProfile: grid is null");
  require(values_.size() == grid_->size(), "RadialProfile: sample count does not match grid");
  for (const cplx& v : values_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "RadialProfile: samples must be finite");
}

RadialProfile RadialProfile::zero(GridPtr grid) {
  const std::size_t n = grid->size();
  return RadialProfile(std::move(grid), std::vector<cplx>(n));
}

RadialFunction RadialProfile::evaluator() const {
  const double theta_max = grid_->theta_max();
  if (analytic_) {
    return [f = analytic_, theta_max](double theta) -> cplx {
      return theta > theta_max ? cplx{} : f(theta);
    };
  }
  auto spline = std::make_shared<const CubicSpline>(grid_->radii(), std::span<const cplx>(values_));
  return [spline, theta_max](double theta) -> cplx {
    return theta > theta_max ? cplx{} : (*spline)(theta);
  };
}

RadialProfile make_profile(const GridPtr& grid, const RadialFunction& evaluator, std::string tag) {
  require(static_cast<bool>(evaluator), "make_profile: evaluator is empty");
  std::vector<cplx> values(grid->size());
  const auto radii = grid->radii();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = evaluator(radii[i]);
  return RadialProfile(grid, std::move(values), evaluator, std::move(tag));
}

RadialProfile make_profile(int d, double theta_max, std::size_t n_points,
                           const RadialFunction& evaluator, std::string tag) {
  return make_profile(make_grid(d, theta_max, n_points), evaluator, std::move(tag));
}

RadialFunction gaussian(double lambda, cplx amplitude) {
  require(lambda > 0.0, "gaussian: lambda must be > 0");
  return [lambda, amplitude](double theta) -> cplx {
    return amplitude * std::exp(-std::numbers::pi * lambda * theta * theta);
  };
}

RadialFunction normalized_gaussian(int d) { return gaussian(1.0, std::pow(2.0, 0.25 * d)); }

void check_same_grid(const RadialProfile& f, const RadialProfile& g, const char* where) {
  if (f.dim() != g.dim())
    throw ValidationError(std::string(where) + ": dimension mismatch (" +
                          std::to_string(f.dim()) + " vs " + std::to_string(g.dim()) + ")");
  if (!f.grid().same_as(g.grid()))
    throw ValidationError(std::string(where) + ": profiles live on different grids");
}

cplx inner(const RadialProfile& f, const RadialProfile& g) {
  check_same_grid(f, g, "inner");
  const auto w = f.grid().weights();
  const auto a = f.values();
  const auto b = g.values();
  cplx sum{};
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * a[i] * std::conj(b[i]);
  return f.grid().sphere_area() * sum;
}

double norm(const RadialProfile& f) {
  const auto w = f.grid().weights();
  const auto a = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::norm(a[i]);
  return std::sqrt(f.grid().sphere_area() * sum);
}

RadialProfile combine(cplx alpha, const RadialProfile& f, cplx beta, const RadialProfile& g) {
  check_same_grid(f, g, "combine");
  std::vector<cplx> out(f.values().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = alpha * f.values()[i] + beta * g.values()[i];
  return RadialProfile(f.grid_ptr(), std::move(out));
}

RadialProfile scaled(cplx alpha, const RadialProfile& f) {
  std::vector<cplx> out(f.values().begin(), f.values().end());
  for (cplx& v : out) v *= alpha;
  return RadialProfile(f.grid_ptr(), std::move(out));
}

double max_abs_diff(const RadialProfile& f, const RadialProfile& g) {
  check_same_grid(f, g, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    m = std::max(m, std::abs(f.values()[i] - g.values()[i]));
  return m;
}

void write_profile_csv(std::ostream& out, const RadialProfile& f) {
  out << "theta,re,im\n";
  const auto radii = f.grid().radii();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out << format_double(radii[i]) << ',' << format_double(f.values()[i].real()) << ','
        << format_double(f.values()[i].imag()) << '\n';
  }
}

std::string profile_csv(const RadialProfile& f) {
  std::ostringstream out;
  write_profile_csv(out, f);
  return out.str();
}

RadialProfile read_profile_csv(std::istream& in, const GridPtr& grid) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("read_profile_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "theta,re,im")
    throw ValidationError("read_profile_csv: expected header 'theta,re,im', got '" + line + "'");
  const auto radii = grid->radii();
  std::vector<cplx> values;
  values.reserve(radii.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    double theta = 0.0, re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(fields >> theta >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
      throw ValidationError("read_profile_csv: malformed row " + std::to_string(row + 1));
    if (row >= radii.size())
      throw ValidationError("read_profile_csv: more rows than grid nodes");
    if (std::abs(theta - radii[row]) > 1e-12 * std::max(1.0, radii[row]))
      throw ValidationError("read_profile_csv: theta in row " + std::to_string(row + 1) +
                            " does not match the grid");
    values.emplace_back(re, im);
    ++row;
  }
  if (row != radii.size())
    throw ValidationError("read_profile_csv: expected " + std::to_string(radii.size()) +
                          " rows, got " + std::to_string(row));
  return RadialProfile(grid, std::move(values));
}

}  // namespace radgab

#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "radgab/error.hpp"
#include "radgab/frames.hpp"
#include "radgab/random.hpp"

using namespace radgab;

namespace {

const GridPtr& shared_grid() {
  static const GridPtr grid = make_grid(2, 8.0, 1024);
  return grid;
}

const RadialProfile& window() {
  static const RadialProfile g = make_profile(shared_grid(), normalized_gaussian(2));
  return g;
}

// Frames are costly to build, so each configuration is built once.
const FrameSystem& frame(int jk_max, bool normalized = true) {
  static std::map<std::pair<int, bool>, FrameSystem> cache;
  const auto key = std::make_pair(jk_max, normalized);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_frame(window(), {0.5, 0.5, 2, jk_max}, normalized)).first;
  return it->second;
}

RadialProfile random_in_test_space(const std::vector<RadialProfile>& basis, Rng& rng) {
  RadialProfile f = RadialProfile::zero(shared_grid());
  for (const auto& e : basis) f = combine(1.0, f, cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)), e);
  return f;
}

double sampling_energy(const RadialProfile& f, const FrameSystem& fr) {
  double sum = 0.0;
  for (const cplx& c : analyze_vector(f, fr)) sum += std::norm(c);
  return sum;
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("smallest frame") {
    const FrameSystem fr = build_frame(window(), {0.5, 0.5, 2, 1}, true);
    REQUIRE(fr.size() == 3);
    CHECK(max_abs_diff(fr.profiles()[0], window()) < 1e-9);
    CHECK(fr.position({1, 0, 0}) == std::optional<std::size_t>(2));
    CHECK_FALSE(fr.position({1, 1, 0}).has_value());
  }

  TEST_CASE("normalization scales by sqrt(mu)") {
    const FrameSystem& plain = frame(8, false);
    const FrameSystem& scaled_fr = frame(8, true);
    for (std::size_t i = 0; i < plain.size(); ++i)
      CHECK(std::abs(norm(scaled_fr.profiles()[i]) - std::sqrt(plain.atoms()[i].mu) * norm(plain.profiles()[i])) <
            1e-12);
  }

  TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(build_frame(RadialProfile::zero(shared_grid()), {0.5, 0.5, 2, 2}, true), ValidationError);
    CHECK_THROWS_AS(build_frame(window(), {0.5, 0.5, 3, 2}, true), ValidationError);
  }

  TEST_CASE("analysis") {
    const FrameSystem& fr = frame(8);
    for (const cplx& c : analyze_vector(RadialProfile::zero(shared_grid()), fr)) CHECK(c == cplx{});
    const std::size_t i0 = 17;
    const auto c = analyze(fr.profiles()[i0], fr);
    CHECK(std::abs(c.entries.at(fr.atoms()[i0].index) - std::pow(norm(fr.profiles()[i0]), 2)) < 1e-12);
    const auto cg = analyze(window(), fr);
    CHECK(std::abs(cg.entries.at({0, 0, 0}) - std::pow(norm(window()), 2)) < 1e-9);
    const auto other = make_profile(make_grid(2, 8.0, 512), gaussian(1.0));
    CHECK_THROWS_AS(analyze(other, fr), ValidationError);
  }

  TEST_CASE("synthesis") {
    const FrameSystem& fr = frame(8);
    CoeffSeq unit;
    unit.entries[{0, 0, 0}] = 1.0;
    CHECK(max_abs_diff(synthesize(unit, fr), window()) < 1e-9);

    const auto f = make_profile(shared_grid(), gaussian(1.7, cplx(0.2, 0.9)));
    CHECK(max_abs_diff(synthesize(analyze(f, fr), fr), frame_operator(f, fr)) < 1e-12);

    Rng rng(2);
    CoeffVector a(fr.size()), b(fr.size()), sum(fr.size());
    const cplx alpha(0.7, -1.2), beta(-0.3, 0.5);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      a[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      b[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      sum[i] = alpha * a[i] + beta * b[i];
    }
    const auto lhs = synthesize_vector(sum, fr);
    const auto rhs = combine(alpha, synthesize_vector(a, fr), beta, synthesize_vector(b, fr));
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);

    CoeffSeq bad;
    bad.entries[{40, 0, 0}] = 1.0;
    CHECK_THROWS_AS(synthesize(bad, fr), ValidationError);
  }

  TEST_CASE("frame operator is positive and self-adjoint") {
    const FrameSystem& fr = frame(8);
    Rng rng(9);
    const auto basis = laguerre_test_space(shared_grid(), 5);
    for (int i = 0; i < 10; ++i) {
      const auto f = random_in_test_space(basis, rng);
      const auto h = random_in_test_space(basis, rng);
      CHECK(inner(frame_operator(f, fr), f).real() >= -1e-10);
      CHECK(std::abs(inner(frame_operator(f, fr), h) - std::conj(inner(frame_operator(h, fr), f))) < 1e-10);
    }
  }

  TEST_CASE("reconstruction inside the span") {
    const FrameSystem& fr = frame(8);
    Rng rng(4);
    CoeffVector c(fr.size());
    for (cplx& v : c) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto f = synthesize_vector(c, fr);
    const double tol = 1e-8;
    const Reconstruction rec = reconstruct(f, fr, {tol, 20000, false});
    CHECK(rec.converged);
    CHECK(rec.relative_error <= 10 * tol);
    for (std::size_t k = 1; k < rec.residual_history.size(); ++k)
      CHECK(rec.residual_history[k] <= rec.residual_history[k - 1] + 1e-12);
  }

  TEST_CASE("zero input reconstructs exactly") {
    const Reconstruction rec = reconstruct(RadialProfile::zero(shared_grid()), frame(8));
    CHECK(rec.iterations == 0);
    CHECK(rec.converged);
    CHECK(rec.relative_error == 0.0);
    for (const cplx& v : rec.profile.values()) CHECK(v == cplx{});
  }

  TEST_CASE("non-convergence is reported") {
    const auto f = make_profile(shared_grid(), gaussian(2.0));
    const Reconstruction rec = reconstruct(f, frame(8), {1e-14, 2, false});
    CHECK_FALSE(rec.converged);
    CHECK(rec.iterations == 2);
  }

  TEST_CASE("diagonal scaling still reconstructs") {
    const auto f = make_profile(shared_grid(), gaussian(2.0));
    const Reconstruction rec = reconstruct(f, frame(8), {1e-6, 20000, true});
    CHECK(rec.converged);
    CHECK(rec.relative_error < 1e-5);
  }

  TEST_CASE("one-dimensional test space gives the Rayleigh quotient of g") {
    const FrameSystem& fr = frame(8);
    const FrameBounds b = frame_bounds(fr, 1);
    const double rayleigh = sampling_energy(window(), fr) / std::pow(norm(window()), 2);
    CHECK(b.lower == doctest::Approx(rayleigh).epsilon(1e-10));
    CHECK(b.upper == doctest::Approx(rayleigh).epsilon(1e-10));
  }

  TEST_CASE("reference configuration") {
    const FrameSystem& fr = frame(16);
    const std::size_t test_dim = 6;
    const FrameBounds b = frame_bounds(fr, test_dim);
    CHECK(b.lower > 0.0);
    CHECK(b.upper >= b.lower);

    const auto basis = laguerre_test_space(shared_grid(), test_dim);
    Rng rng(21);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto f = random_in_test_space(basis, rng);
      const double q = sampling_energy(f, fr) / std::pow(norm(f), 2);
      CHECK(q >= b.lower * (1 - 1e-9));
      CHECK(q <= b.upper * (1 + 1e-9));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    CHECK(hi / lo <= b.ratio() * (1 + 1e-9));
    const double rq = sampling_energy(window(), fr);
    CHECK(rq >= b.lower * (1 - 1e-9));
    CHECK(rq <= b.upper * (1 + 1e-9));

    const auto f = make_profile(shared_grid(), gaussian(2.0));
    const Reconstruction rec = reconstruct(f, fr, {1e-6, 5000, false});
    CHECK(rec.converged);
    CHECK(rec.relative_error < 1e-3);
    const double independent = norm(combine(1.0, f, -1.0, synthesize_vector(rec.coefficients, fr))) / norm(f);
    CHECK(independent == doctest::Approx(rec.relative_error).epsilon(1e-9));
  }

  TEST_CASE("bound ratio at J = 12") {
    const FrameBounds b = frame_bounds(frame(12), 6);
    CHECK(b.ratio() < 10.0);
  }

  TEST_CASE("bounds are stable under doubling J") {
    const FrameBounds small = frame_bounds(frame(8), 4);
    const FrameBounds large = frame_bounds(frame(16), 4);
    CHECK(std::abs(large.lower / small.lower - 1) < 0.05);
    CHECK(std::abs(large.upper / small.upper - 1) < 0.05);
  }

  TEST_CASE("calibration scan") {
    const Calibration cal = calibrate_steps(window(), 6, 3);
    CHECK(cal.rows.size() == 5);
    REQUIRE(cal.chosen.has_value());
    for (const auto& row : cal.rows) {
      if (row.step == *cal.chosen) CHECK(row.bounds.ratio() < 100.0);
      if (row.step > *cal.chosen) CHECK((row.bounds.lower <= 0.0 || row.bounds.ratio() >= 100.0));
    }
  }

  TEST_CASE("coefficient CSV") {
    CoeffSeq c;
    c.entries[{1, 1, -1}] = cplx(0.5, -2.0);
    c.entries[{0, 0, 0}] = 1.0;
    CHECK(coeff_csv(c) == "j,k,ell,re,im\n0,0,0,1,0\n1,1,-1,0.5,-2\n");
  }
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "radgab/error.hpp"
#include "radgab/omega.hpp"
#include "radgab/random.hpp"

using namespace radgab;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rotate(const Vec2& v, double psi) {
  return {std::cos(psi) * v[0] - std::sin(psi) * v[1], std::sin(psi) * v[0] + std::cos(psi) * v[1]};
}

}  // namespace

TEST_SUITE("omega") {
  TEST_CASE("orbit point normalization") {
    CHECK(OrbitPoint(0.0, 2.0, -0.5).c == 1.0);
    CHECK(OrbitPoint(1.0, 0.0, 0.3).c == 1.0);
    CHECK(OrbitPoint(1.0, 2.0, 0.3).c == 0.3);
    CHECK_THROWS_AS(OrbitPoint(1.0, 1.0, 1.5), ValidationError);
    CHECK_THROWS_AS(OrbitPoint(-1.0, 1.0, 0.0), ValidationError);
  }

  TEST_CASE("origin acts as the identity") {
    for (int d = 2; d <= 5; ++d) {
      const auto g = make_profile(d, 8.0, 1024, normalized_gaussian(d));
      CHECK(max_abs_diff(omega_apply(g, OrbitPoint(0, 0, 1)), g) < 1e-9);
    }
  }

  TEST_CASE("pure translation average matches adaptive quadrature") {
    const int d = 3;
    const double r = 1.5;
    const RadialFunction f0 = gaussian(0.8);
    const auto g = make_profile(d, 8.0, 512, f0);
    const auto out = omega_apply(g, OrbitPoint(r, 0.0, 1.0));
    const auto radii = g.grid().radii();
    for (std::size_t n = 0; n < radii.size(); n += 37) {
      const double theta = radii[n];
      const double ref = 0.5 * oracle::adaptive_simpson(
                                   [&](double phi) {
                                     const double arg = std::sqrt(std::max(
                                         0.0, theta * theta - 2 * r * theta * std::cos(phi) + r * r));
                                     return f0(arg).real() * std::sin(phi);
                                   },
                                   0.0, kPi);
      CHECK(std::abs(out.values()[n].real() - ref) < 1e-9);
      CHECK(std::abs(out.values()[n].imag()) < 1e-10);
    }
  }

  TEST_CASE("d = 2 rotation average oracle") {
    const RadialFunction g0 = normalized_gaussian(2);
    const auto g = make_profile(2, 8.0, 1024, g0);
    for (const OrbitPoint p : {OrbitPoint(1, 1, 0), OrbitPoint(2, 0.7, -0.4), OrbitPoint(0.5, 2.5, 0.9)}) {
      const auto out = omega_apply(g, p);
      const auto radii = g.grid().radii();
      double worst = 0.0;
      for (std::size_t n = 0; n < radii.size(); n += 13)
        worst = std::max(worst, std::abs(out.values()[n] - oracle::omega_2d(g0, radii[n], p.r, p.s, p.c)));
      CHECK(worst < 1e-6);
    }
  }

  TEST_CASE("Gaussian STFT magnitude") {
    for (int d = 2; d <= 4; ++d) {
      const auto g = make_profile(d, 8.0, 1024, normalized_gaussian(d));
      for (double r : {0.0, 0.8, 2.1})
        for (double s : {0.0, 1.3, 3.0})
          for (double c : {-1.0, -0.2, 0.6}) {
            const double expected = std::exp(-kPi * (r * r + s * s) / 2);
            CHECK(std::abs(std::abs(radial_stft(g, g, OrbitPoint(r, s, c))) - expected) < 1e-6);
          }
    }
  }

  TEST_CASE("origin STFT is the inner product") {
    const auto grid = make_grid(3, 8.0, 512);
    const auto f = make_profile(grid, gaussian(1.7, cplx(0.3, 1.1)));
    const auto g = make_profile(grid, gaussian(0.6));
    CHECK(std::abs(radial_stft(f, g, OrbitPoint(0, 0, 1)) - inner(f, g)) < 1e-12);
    CHECK(std::abs(radial_stft(g, g, OrbitPoint(0, 0, 1)) - std::pow(norm(g), 2)) < 1e-9);
  }

  TEST_CASE("radial STFT against the direct planar STFT") {
    const RadialFunction f0 = gaussian(1.6, 1.3);
    const RadialFunction g0 = gaussian(0.7);
    const auto grid = make_grid(2, 8.0, 1024);
    const auto f = make_profile(grid, f0);
    const auto g = make_profile(grid, g0);
    const double r = 2, s = 1, c = 0.5;
    const cplx value = radial_stft(f, g, OrbitPoint(r, s, c));
    // Average of the direct STFT over rotated pairs, with the exp(-pi i x.omega) factor.
    const Vec2 x{r, 0.0};
    const Vec2 w{s * c, s * std::sqrt(1 - c * c)};
    cplx avg{};
    const int rotations = 6;
    for (int k = 0; k < rotations; ++k) {
      const double psi = 2 * kPi * k / rotations;
      avg += stft_oracle_2d(f0, g0, rotate(x, psi), rotate(w, psi));
    }
    avg /= static_cast<double>(rotations);
    CHECK(std::abs(value - std::polar(1.0, -kPi * r * s * c) * avg) < 1e-5);
  }

  TEST_CASE("direct planar STFT oracle") {
    const RadialFunction g0 = normalized_gaussian(2);
    CHECK(std::abs(stft_oracle_2d(g0, g0, {0, 0}, {0, 0}) - 1.0) < 1e-7);
    const cplx v = stft_oracle_2d(g0, g0, {1.0, 0.0}, {0.0, 1.0});
    CHECK(std::abs(std::abs(v) - std::exp(-kPi)) < 1e-6);
    CHECK(stft_oracle_2d(g0, [](double) { return cplx{}; }, {1, 1}, {1, 1}) == cplx{});
    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
      const Vec2 x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const Vec2 w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const double psi = rng.uniform(0, 2 * kPi);
      const double a = std::abs(stft_oracle_2d(gaussian(1.4), g0, x, w));
      const double b = std::abs(stft_oracle_2d(gaussian(1.4), g0, rotate(x, psi), rotate(w, psi)));
      CHECK(std::abs(a - b) < 1e-7);
    }
  }

  TEST_CASE("contraction and linearity") {
    Rng rng(3);
    const auto grid = make_grid(3, 8.0, 512);
    // Sampled profiles only, so both sides interpolate the same way.
    const auto sampled = [&](const RadialFunction& fn) {
      const auto p = make_profile(grid, fn);
      return RadialProfile(grid, std::vector<cplx>(p.values().begin(), p.values().end()));
    };
    const auto f = sampled(gaussian(1.2, cplx(1, -0.5)));
    const auto g = sampled([](double t) { return cplx(t * t * std::exp(-2 * t * t)); });
    for (int i = 0; i < 6; ++i) {
      const OrbitPoint p(rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-1, 1));
      const auto og = omega_apply(g, p);
      CHECK(norm(og) <= norm(g) * (1 + 1e-8));
      const cplx a(0.3, 2.0), b(-1.1, 0.4);
      const auto lhs = omega_apply(combine(a, f, b, g), p);
      const auto rhs = combine(a, omega_apply(f, p), b, og);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }

  TEST_CASE("node-count rule") {
    const auto g = make_profile(2, 8.0, 256, normalized_gaussian(2));
    const OrbitPoint p(1.0, 2.0, 0.3);
    CHECK(min_phi_nodes(8.0, p) == 200);
    CHECK(min_phi_nodes(8.0, OrbitPoint(0, 0, 1)) == 64);
    CHECK_THROWS_AS(omega_apply(g, p, 199), QuadratureError);
    const auto base = omega_apply(g, p, 200);
    const auto doubled = omega_apply(g, p, 400);
    CHECK(max_abs_diff(base, doubled) < 1e-10);
  }
}

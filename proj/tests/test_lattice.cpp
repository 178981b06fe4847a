#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radgab/embeddings.hpp"
#include "radgab/error.hpp"
#include "radgab/lattice.hpp"
#include "radgab/random.hpp"

using namespace radgab;

TEST_SUITE("lattice") {
  TEST_CASE("n_count values") {
    CHECK(n_count(0, 5) == 0);
    CHECK(n_count(7, 0) == 0);
    CHECK(n_count(1, 1) == 1);
    const double asymptote = std::numbers::pi / (4 * std::sqrt(3.0)) * 200 / 2;
    const double ratio = n_count(200, 200) / asymptote;
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
    CHECK(n_count(2, 3) >= 1);
  }

  TEST_CASE("n_count symmetry") {
    bool symmetric = true;
    for (int j = 0; j <= 512; ++j)
      for (int k = j + 1; k <= 512; ++k) symmetric = symmetric && n_count(j, k) == n_count(k, j);
    CHECK(symmetric);
  }

  TEST_CASE("angles per row") {
    for (int j = 1; j <= 20; ++j)
      for (int k = 1; k <= 20; ++k) {
        const int n = n_count(j, k);
        CHECK(lattice_cosine({j, k, n}) == 1.0);
        CHECK(lattice_cosine({j, k, -n}) == -1.0);
        for (int ell = -n; ell < n; ++ell)
          CHECK(lattice_cosine({j, k, ell}) < lattice_cosine({j, k, ell + 1}));
      }
    CHECK(lattice_cosine({0, 3, 0}) == 1.0);
  }

  TEST_CASE("mu weights") {
    for (int d = 2; d <= 5; ++d) {
      CHECK(mu_weight({1, 1, 1}, d) == 3.0);
      CHECK(mu_weight({1, 1, -1}, d) == 3.0);
    }
    CHECK(mu_weight({4, 7, 0}, 2) == 11.0);
    CHECK(mu_weight({2, 3, 0}, 3) == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(mu_weight({0, 0, 0}, 3) == 1.0);
    CHECK(mu_weight({0, 4, 0}, 3) == 17.0);
    for (int d = 2; d <= 4; ++d)
      for (const auto& atom : build_lattice({1, 1, d, 24})) {
        CHECK(atom.mu > 0.0);
        CHECK(mu_weight({atom.index.k, atom.index.j, atom.index.ell}, d) == atom.mu);
      }
  }

  TEST_CASE("small lattices") {
    const auto one = build_lattice({0.5, 0.25, 2, 1});
    REQUIRE(one.size() == 3);
    CHECK(one[0].index == LatticeIndex{0, 0, 0});
    CHECK(one[1].index == LatticeIndex{0, 1, 0});
    CHECK(one[2].index == LatticeIndex{1, 0, 0});
    CHECK(one[1].point.s == 0.25);
    CHECK(one[1].point.c == 1.0);
    CHECK(one[2].point.r == 0.5);
    const auto two = build_lattice({1, 1, 2, 2});
    CHECK(two.size() == 8);
    int row11 = 0;
    for (const auto& atom : two) row11 += atom.index.j == 1 && atom.index.k == 1;
    CHECK(row11 == 3);
    for (std::size_t i = 1; i < two.size(); ++i) CHECK(two[i - 1].index < two[i].index);
  }

  TEST_CASE("index counts") {
    const std::pair<int, std::int64_t> table[] = {{0, 1}, {1, 3}, {2, 8}, {4, 27}, {8, 121},
                                                  {12, 303}, {16, 571}, {30, 2614}, {64, 18569}};
    for (const auto& [n, count] : table) CHECK(index_count(n) == count);
    for (int J : {3, 9, 17}) CHECK(build_lattice({1, 1, 3, J}).size() == static_cast<std::size_t>(index_count(J)));
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(build_lattice({0.0, 1, 2, 3}), ValidationError);
    CHECK_THROWS_AS(build_lattice({1, -1, 2, 3}), ValidationError);
    CHECK_THROWS_AS(build_lattice({1, 1, 1, 3}), ValidationError);
    CHECK_THROWS_AS(build_lattice({1, 1, 2, 0}), ValidationError);
    CHECK_THROWS_AS(covered_2d({0, 0}, {0, 0}, {1, 1, 3, 4}), ValidationError);
  }

  TEST_CASE("rearranged inverse weights decay") {
    for (int d = 2; d <= 4; ++d) {
      std::vector<double> inv;
      for (const auto& atom : build_lattice({1, 1, d, 128})) inv.push_back(1.0 / atom.mu);
      const DecayFit fit = fit_decay(rearrange(inv));
      CHECK(fit.slope <= -(d - 1) / 3.0 + 0.1);
    }
  }

  TEST_CASE("trivially covered points") {
    const LatticeSpec spec{0.5, 0.5, 2, 30};
    CHECK(covered_2d({0, 0}, {0, 0}, spec));
    for (int j = 0; j <= 29; j += 4) CHECK(covered_2d({0.5 * j, 0}, {0, 0}, spec));
    CHECK(covered_2d({0, 1.0}, {-0.5, 0.0}, spec));
  }

  TEST_CASE("reflections only widen the covered set") {
    Rng rng(5);
    const LatticeSpec spec{0.5, 0.5, 2, 30};
    for (int i = 0; i < 200; ++i) {
      const Vec2 x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      const Vec2 w{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      if (covered_2d(x, w, spec, {1024, false})) CHECK(covered_2d(x, w, spec));
    }
  }

  TEST_CASE("coarse search agrees with a fine brute force") {
    Rng rng(17);
    const LatticeSpec spec{0.5, 0.5, 2, 30};
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
      const Vec2 x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      const Vec2 w{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      agree += covered_2d(x, w, spec, {1024, true}) == covered_2d(x, w, spec, {16384, true});
    }
    CHECK(agree == 100);
  }

  TEST_CASE("CSV export") {
    const auto atoms = build_lattice({0.5, 0.5, 2, 2});
    const std::string csv = lattice_csv(atoms);
    CHECK(csv.rfind("j,k,ell,r,s,c,mu\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(csv.find("\n1,1,-1,0.5,0.5,-1,3\n") != std::string::npos);
  }
}

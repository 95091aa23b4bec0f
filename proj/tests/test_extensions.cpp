#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "maso/extensions.hpp"
#include "maso/functions.hpp"
#include "maso/value_oracle.hpp"

using namespace maso;

TEST_CASE("level-set extension on fractional points") {
  ValueOracle card = make_modular(2, {1.0, 1.0});
  CHECK(lovasz_eval(card, {0.5, 0.2}) == Catch::Approx(0.7));

  ValueOracle capped = make_concave_min_cap(2, {1.0, 1.0}, 1.0);
  // Level sets: theta in (0.2, 0.5] gives {0}, theta in (0, 0.2] gives both;
  // value = 0.3 * 1 + 0.2 * 1 = 0.5.
  CHECK(lovasz_eval(capped, {0.5, 0.2}) == Catch::Approx(0.5));

  // Vertices reproduce the set function.
  for (Set s = 0; s < 4; ++s) {
    FracPoint z(2, 0.0);
    for_each_element(s, [&](int v) { z[v] = 1.0; });
    CHECK(lovasz_eval(capped, z) == Catch::Approx(capped(s)));
  }
}

TEST_CASE("level-set subgradients") {
  ValueOracle card = make_modular(3, {1.0, 1.0, 1.0});
  std::vector<double> grad = lovasz_subgradient(card, {0.3, 0.9, 0.1});
  CHECK(grad == std::vector<double>{1.0, 1.0, 1.0});

  ValueOracle capped = make_concave_min_cap(2, {1.0, 1.0}, 1.0);
  std::vector<double> g2 = lovasz_subgradient(capped, {0.5, 0.2});
  CHECK(g2[0] == Catch::Approx(1.0));
  CHECK(g2[1] == Catch::Approx(0.0));

  // Uniform point: marginals in ascending index order by the tie-break.
  ValueOracle cover = make_coverage(3, 3, {Set{0b011}, Set{0b011}, Set{0b111}});
  std::vector<double> g3 = lovasz_subgradient(cover, {0.4, 0.4, 0.4});
  CHECK(g3[0] == Catch::Approx(cover(Set{0b001})));
  CHECK(g3[1] == Catch::Approx(cover(Set{0b011}) - cover(Set{0b001})));
  CHECK(g3[2] == Catch::Approx(cover(Set{0b111}) - cover(Set{0b011})));
}

TEST_CASE("subgradient supports the extension from below") {
  ValueOracle cover = make_coverage(4, 4, {Set{1}, Set{3}, Set{6}, Set{12}});
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FracPoint z(4), y(4);
    for (int v = 0; v < 4; ++v) {
      z[v] = rng.uniform01();
      y[v] = rng.uniform01();
    }
    std::vector<double> s = lovasz_subgradient(cover, z);
    double rhs = lovasz_eval(cover, z);
    for (int v = 0; v < 4; ++v) rhs += s[v] * (y[v] - z[v]);
    CHECK(lovasz_eval(cover, y) >= rhs - 1e-9);
  }
}

TEST_CASE("product extension exact values") {
  ValueOracle card = make_modular(2, {1.0, 1.0});
  CHECK(multilinear_eval_exact(card, {0.5, 0.2}) == Catch::Approx(0.7));

  ValueOracle capped = make_concave_min_cap(2, {1.0, 1.0}, 1.0);
  // 1 - (1-0.5)(1-0.2) = 0.6.
  CHECK(multilinear_eval_exact(capped, {0.5, 0.2}) == Catch::Approx(0.6));

  for (Set s = 0; s < 4; ++s) {
    FracPoint z(2, 0.0);
    for_each_element(s, [&](int v) { z[v] = 1.0; });
    CHECK(multilinear_eval_exact(capped, z) == Catch::Approx(capped(s)));
  }
}

TEST_CASE("product extension partial derivatives") {
  ValueOracle card = make_modular(3, {1.0, 1.0, 1.0});
  CHECK(multilinear_partial(card, {0.3, 0.6, 0.9}, 1) == Catch::Approx(1.0));

  ValueOracle capped = make_concave_min_cap(2, {1.0, 1.0}, 1.0);
  // f^M(1, 0.2) - f^M(0, 0.2) = 1 - 0.2.
  CHECK(multilinear_partial(capped, {0.5, 0.2}, 0) == Catch::Approx(0.8));
  // Multilinearity: the partial cannot depend on the coordinate itself.
  CHECK(multilinear_partial(capped, {0.9, 0.2}, 0) == Catch::Approx(0.8));
}

TEST_CASE("monte carlo estimator") {
  ValueOracle capped = make_concave_min_cap(3, {1.0, 1.0, 1.0}, 2.0);
  // Degenerate distribution at a vertex: exact value, zero spread.
  McEstimate at_vertex = multilinear_eval_mc(capped, {1.0, 0.0, 1.0}, 64, 9);
  CHECK(at_vertex.estimate == Catch::Approx(capped(Set{0b101})));
  CHECK(at_vertex.stderr_of_mean == Catch::Approx(0.0));

  ValueOracle card = make_modular(2, {1.0, 1.0});
  McEstimate est = multilinear_eval_mc(card, {0.5, 0.2}, 100000, 17);
  CHECK(std::fabs(est.estimate - 0.7) <= 3.0 * est.stderr_of_mean + 1e-12);

  McEstimate single = multilinear_eval_mc(card, {0.5, 0.2}, 1, 3);
  CHECK((single.estimate == 0.0 || single.estimate == 1.0 || single.estimate == 2.0));

  // Same seed, same estimate.
  McEstimate again = multilinear_eval_mc(card, {0.5, 0.2}, 1000, 17);
  McEstimate twice = multilinear_eval_mc(card, {0.5, 0.2}, 1000, 17);
  CHECK(again.estimate == twice.estimate);
}

TEST_CASE("homogeneity and convexity spot checks") {
  ValueOracle cover = make_coverage(4, 5, {Set{1}, Set{3}, Set{14}, Set{21}});
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    FracPoint z(4), y(4);
    for (int v = 0; v < 4; ++v) {
      z[v] = rng.uniform01();
      y[v] = rng.uniform01();
    }
    double base = lovasz_eval(cover, z);
    for (double alpha : {0.0, 0.3, 2.0, 7.0}) {
      FracPoint scaled(4);
      for (int v = 0; v < 4; ++v) scaled[v] = alpha * z[v];
      CHECK(lovasz_eval(cover, scaled) == Catch::Approx(alpha * base).margin(1e-9));
    }
    double lambda = rng.uniform01();
    FracPoint mix(4);
    for (int v = 0; v < 4; ++v) mix[v] = lambda * z[v] + (1 - lambda) * y[v];
    CHECK(lovasz_eval(cover, mix) <=
          lambda * lovasz_eval(cover, z) + (1 - lambda) * lovasz_eval(cover, y) + 1e-9);
  }
}

TEST_CASE("capacity guards on the exact product extension") {
  ValueOracle wide = make_modular(21, std::vector<double>(21, 1.0));
  FracPoint z(21, 0.5);
  CHECK_THROWS_AS(multilinear_eval_exact(wide, z), CapacityError);
}

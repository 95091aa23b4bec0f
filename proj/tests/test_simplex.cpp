#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <vector>

#include "maso/simplex.hpp"

using namespace maso;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// Expected optima below were frozen from an independent LP solver.

TEST_CASE("two-variable maximization as minimization") {
  LinearProgram lp;
  lp.nvars = 2;
  lp.c = {-1.0, -1.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {kInf, kInf};
  lp.add_row({1.0, 2.0}, 4.0, -1);
  lp.add_row({3.0, 1.0}, 6.0, -1);
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(-2.8).margin(1e-7));
  CHECK(r.x[0] == Catch::Approx(1.6).margin(1e-7));
  CHECK(r.x[1] == Catch::Approx(1.2).margin(1e-7));
}

TEST_CASE("fractional vertex cover of the triangle") {
  LinearProgram lp;
  lp.nvars = 3;
  lp.c = {1.0, 1.0, 1.0};
  lp.lower = {0.0, 0.0, 0.0};
  lp.upper = {1.0, 1.0, 1.0};
  lp.add_row({1.0, 1.0, 0.0}, 1.0, +1);
  lp.add_row({0.0, 1.0, 1.0}, 1.0, +1);
  lp.add_row({1.0, 0.0, 1.0}, 1.0, +1);
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(1.5).margin(1e-7));
  for (double x : r.x) CHECK(x == Catch::Approx(0.5).margin(1e-7));
}

TEST_CASE("equality rows") {
  LinearProgram lp;
  lp.nvars = 2;
  lp.c = {1.0, 1.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {kInf, kInf};
  lp.add_row({1.0, 1.0}, 1.0, 0);
  lp.add_row({1.0, -1.0}, 0.0, +1);
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("dense six-variable box problem") {
  LinearProgram lp;
  lp.nvars = 6;
  lp.c = {-1.255, 4.507, 2.32, 0.987, -3.44, -3.44};
  lp.lower = std::vector<double>(6, 0.0);
  lp.upper = std::vector<double>(6, 2.0);
  lp.add_row({-2.651, 2.197, 0.607, 1.248, -2.876, 2.819}, 3.132, -1);
  lp.add_row({1.995, -1.726, -1.909, -1.9, -1.175, 0.149}, 1.684, -1);
  lp.add_row({-0.408, -1.253, 0.671, -2.163, -1.247, -0.802}, 5.79, -1);
  lp.add_row({-0.264, 1.711, -1.802, 0.085, 0.554, -2.721}, 4.081, -1);
  lp.add_row({0.645, -1.977, -2.61, 2.693, 2.794, 1.85}, 1.854, -1);
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(-7.315841088045811).margin(1e-7));
}

TEST_CASE("covering problem with unit box") {
  LinearProgram lp;
  lp.nvars = 5;
  lp.c = {2.602, 3.825, 1.306, 2.42, 3.682};
  lp.lower = std::vector<double>(5, 0.0);
  lp.upper = std::vector<double>(5, 1.0);
  lp.add_row({0.153, 1.56, 0.877, 1.447, 1.956}, 1.798, +1);
  lp.add_row({1.077, 1.002, 0.144, 0.537, 1.0}, 1.128, +1);
  lp.add_row({1.358, 1.607, 0.762, 0.132, 0.576}, 1.33, +1);
  lp.add_row({1.819, 0.427, 0.904, 1.862, 0.05}, 1.519, +1);
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(4.098424803595488).margin(1e-7));
}

TEST_CASE("infeasible bounds are detected") {
  LinearProgram lp;
  lp.nvars = 1;
  lp.c = {1.0};
  lp.lower = {0.0};
  lp.upper = {kInf};
  lp.add_row({1.0}, 2.0, +1);
  lp.add_row({1.0}, 1.0, -1);
  LpResult r = solve_lp(lp);
  CHECK(r.status == LpStatus::kInfeasible);
}

TEST_CASE("unbounded problems are detected") {
  LinearProgram lp;
  lp.nvars = 1;
  lp.c = {-1.0};
  lp.lower = {0.0};
  lp.upper = {kInf};
  LpResult r = solve_lp(lp);
  CHECK(r.status == LpStatus::kUnbounded);
}

TEST_CASE("degenerate and redundant rows terminate") {
  LinearProgram lp;
  lp.nvars = 2;
  lp.c = {1.0, 2.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {kInf, kInf};
  lp.add_row({1.0, 1.0}, 1.0, +1);
  lp.add_row({1.0, 1.0}, 1.0, +1);  // duplicate
  lp.add_row({2.0, 2.0}, 2.0, +1);  // scaled duplicate
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == Catch::Approx(1.0).margin(1e-7));
}

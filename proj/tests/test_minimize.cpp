#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/instance.hpp"
#include "maso/minimize.hpp"
#include "maso/oracle.hpp"

using namespace maso;

namespace {

MasoInstance min_instance(int n, int k, std::vector<ValueOracle> fs,
                          FeasibleFamily outer) {
  MasoInstance inst;
  inst.ground = GroundSet(n);
  inst.k = k;
  inst.objectives = std::move(fs);
  inst.outer = std::move(outer);
  inst.sense = Sense::kMin;
  return inst;
}

}  // namespace

TEST_CASE("relaxation solver on trivial families") {
  MasoInstance one = min_instance(3, 1, {make_modular(3, {1, 2, 3})},
                                  family_trivial_v(3));
  MaLeResult r = solve_ma_le(one, 1e-9, 2000, 0);
  CHECK(r.value == Catch::Approx(6.0).margin(1e-6));

  // Two agents, modular costs: each element goes fully to its cheaper agent.
  MasoInstance two = min_instance(
      3, 2, {make_modular(3, {1.0, 5.0, 2.0}), make_modular(3, {4.0, 2.0, 2.0})},
      family_trivial_v(3));
  MaLeResult r2 = solve_ma_le(two, 1e-9, 2000, 0);
  CHECK(r2.value == Catch::Approx(1.0 + 2.0 + 2.0).margin(1e-6));

  // Feasibility: aggregate mass at least one everywhere.
  FracPoint agg = r2.assignment.aggregate();
  for (double x : agg) CHECK(x >= 1.0 - 1e-7);
}

TEST_CASE("relaxation value on the triangle matches the classical LP") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  MasoInstance inst = min_instance(3, 1, {make_modular(3, {1, 1, 1})},
                                   family_vertex_covers(k3));
  MaLeResult r = solve_ma_le(inst, 1e-9, 2000, 0);
  CHECK(r.value == Catch::Approx(1.5).margin(1e-6));
}

TEST_CASE("pre-assignment objective") {
  MasoInstance inst = min_instance(
      2, 2, {make_modular(2, {3.0, 7.0}), make_modular(2, {11.0, 13.0})},
      family_trivial_v(2));

  PreAssignment all_to_one{std::vector<Set>{full_mask(2), Set{0}}};
  ValueOracle g1 = g_function(inst, all_to_one);
  for (Set s = 0; s < 4; ++s) CHECK(g1(s) == inst.objectives[0](s));

  PreAssignment nothing{std::vector<Set>{Set{0}, Set{0}}};
  ValueOracle g0 = g_function(inst, nothing);
  for (Set s = 0; s < 4; ++s) CHECK(g0(s) == 0.0);

  PreAssignment split{std::vector<Set>{Set{0b01}, Set{0b10}}};
  ValueOracle g = g_function(inst, split);
  CHECK(g(Set{0b11}) == Catch::Approx(3.0 + 13.0));

  std::vector<Set> overlap = {Set{0b01}, Set{0b01}};
  CHECK_THROWS_AS(PreAssignment{overlap}, PreconditionError);
}

TEST_CASE("disjointification of a fractional assignment") {
  FractionalAssignment one(1, 1);
  one.parts[0][0] = 0.6;
  FractionalAssignment kept = disjointify_max(one, 1);
  CHECK(kept.parts[0][0] == Catch::Approx(0.6));

  FractionalAssignment z(2, 1);
  z.parts[0][0] = 0.6;
  z.parts[1][0] = 0.5;
  FractionalAssignment hat = disjointify_max(z, 2);
  CHECK(hat.parts[0][0] == Catch::Approx(1.2));
  CHECK(hat.parts[1][0] == Catch::Approx(0.0));

  FractionalAssignment tie(2, 1);
  tie.parts[0][0] = 0.5;
  tie.parts[1][0] = 0.5;
  FractionalAssignment won = disjointify_max(tie, 2);
  CHECK(won.parts[0][0] == Catch::Approx(1.0));
  CHECK(won.parts[1][0] == Catch::Approx(0.0));
}

TEST_CASE("level-set rounding degeneracies") {
  MasoInstance inst = min_instance(3, 1, {make_modular(3, {1, 1, 1})},
                                   family_trivial_v(3));
  FractionalAssignment unit(1, 3);
  for (int v = 0; v < 3; ++v) unit.parts[0][v] = 1.0;
  CeResult r = ce_rounding(inst, unit, full_mask(3), 4);
  CHECK(r.allocation.parts[0] == full_mask(3));
  CHECK(r.iterations == 1);

  MasoInstance loose = min_instance(2, 2,
                                    {make_modular(2, {1, 1}), make_modular(2, {1, 1})},
                                    family_full_powerset(2));
  FractionalAssignment z(2, 2);
  CeResult empty = ce_rounding(loose, z, Set{0}, 4);
  CHECK(empty.iterations == 0);
  CHECK(empty.allocation.cover() == Set{0});

  CHECK_THROWS_AS(ce_rounding(inst, unit, Set{0b001}, 4), PreconditionError);
}

TEST_CASE("level-set rounding iteration count is geometric") {
  MasoInstance tiny = min_instance(1, 2,
                                   {make_modular(1, {1.0}), make_modular(1, {1.0})},
                                   family_trivial_v(1));
  FractionalAssignment half(2, 1);
  half.parts[0][0] = 0.5;
  half.parts[1][0] = 0.5;
  double total = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t)
    total += static_cast<double>(ce_rounding(tiny, half, Set{1}, 100 + t).iterations);
  double mean = total / trials;
  double sigma_mean = std::sqrt(2.0 / trials);
  CHECK(std::fabs(mean - 2.0) <= 3.0 * sigma_mean);
}

TEST_CASE("bounded-blocker rounding on the triangle") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  MasoInstance inst = min_instance(3, 1, {make_modular(3, {1, 1, 1})},
                                   family_vertex_covers(k3));
  FractionalAssignment half(1, 3);
  for (int v = 0; v < 3; ++v) half.parts[0][v] = 0.5;
  CeResult r = bounded_blocker_round(inst, half, 2.0, 9);
  // 2 * 0.5 >= 1 for every vertex: the threshold set is all of V.
  CHECK(r.allocation.cover() == full_mask(3));
  CHECK(inst.outer.contains(r.allocation.cover()));

  // Integral input: the threshold set is the support.
  FractionalAssignment integral(1, 3);
  integral.parts[0][0] = 1.0;
  integral.parts[0][1] = 1.0;
  CeResult s = bounded_blocker_round(inst, integral, 1.0, 9);
  CHECK(s.allocation.cover() == Set{0b011});
}

TEST_CASE("symmetrization of h") {
  ValueOracle zero = make_zero(3);
  ValueOracle zsym = symmetrize_h(zero);
  for (Set s = 0; s < 8; ++s) CHECK(zsym(s) == 0.0);

  Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  ValueOracle cut = make_graph_cut(square);
  ValueOracle csym = symmetrize_h(cut);
  for (Set s = 0; s < 16; ++s) CHECK(csym(s) == Catch::Approx(2.0 * cut(s)));

  ValueOracle card = make_modular(3, {1, 1, 1});
  ValueOracle ssym = symmetrize_h(card);
  for (Set s = 0; s < 8; ++s) {
    CHECK(ssym(s) == Catch::Approx(3.0));
    CHECK(ssym(s) == Catch::Approx(ssym(full_mask(3) & ~s)));
  }
}

TEST_CASE("uncrossing respects a symmetric h") {
  Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  ValueOracle h = make_graph_cut(square);
  MasoInstance inst = min_instance(
      4, 2, {make_sum({make_modular(4, {1, 2, 1, 2}), h}),
             make_sum({make_modular(4, {2, 1, 2, 1}), h})},
      family_trivial_v(4));
  inst.decomposition = Decomposition{
      {make_modular(4, {1, 2, 1, 2}), make_modular(4, {2, 1, 2, 1})}, h};
  FractionalAssignment z(2, 4);
  for (int v = 0; v < 4; ++v) {
    z.parts[0][v] = 0.5;
    z.parts[1][v] = 0.5;
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CeResult r = ce_rounding(inst, z, full_mask(4), seed);
    CHECK((r.allocation.cover() & full_mask(4)) == full_mask(4));
    r.allocation.require_disjoint();
  }
}

TEST_CASE("fracture pipeline fixes integral inputs") {
  Graph path(3, {{0, 1}, {1, 2}});
  MasoInstance inst = min_instance(
      3, 2, {make_modular(3, {1.0, 4.0, 2.0}), make_modular(3, {2.0, 1.0, 5.0})},
      family_vertex_covers(path));
  // Integral point: agent 1 takes vertex 1 (the middle), nothing else.
  FractionalAssignment z(2, 3);
  z.parts[0][1] = 1.0;
  FractureResult r = fracture_expand_return(inst, z, make_sa_exact_rounder(), 3);
  CHECK(inst.allocation_feasible(r.allocation));
  CHECK(r.value == Catch::Approx(4.0));
  CHECK(r.allocation.parts[0] == Set{0b010});
  CHECK(r.allocation.parts[1] == Set{0});
}

TEST_CASE("fracture pipeline stays within its certified envelope") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  MasoInstance inst = min_instance(
      3, 2, {make_modular(3, {1.0, 2.0, 3.0}), make_modular(3, {3.0, 1.0, 2.0})},
      family_vertex_covers(k3));
  MaLeResult relax = solve_ma_le(inst, 1e-9, 2000, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FractureResult r =
        fracture_expand_return(inst, relax.assignment, make_sa_threshold_rounder(2.0), seed);
    REQUIRE(inst.allocation_feasible(r.allocation));
    Certificate cert = certify(inst, r.allocation);
    double log2n = std::log2(3.0);
    CHECK(cert.ratio <= std::min(2.0, 4.0 * log2n * log2n) * 2.0 + 1e-9);
  }
}

TEST_CASE("disjointify pipeline is a k-approximation for facility location") {
  MasoInstance inst = min_instance(
      4, 2,
      {make_facility_location(4, {{1, 2, 3, 4}, {4, 3, 2, 1}, {2, 2, 2, 2}}),
       make_facility_location(4, {{3, 1, 4, 1}, {1, 5, 1, 5}, {2, 6, 2, 6}})},
      family_trivial_v(4));
  MinimizeResult r = minimize_via_disjointify(inst, make_sa_exact_rounder(), 5);
  REQUIRE(inst.allocation_feasible(r.allocation));
  Certificate cert = certify(inst, r.allocation);
  CHECK(cert.algo_value <= inst.k * cert.opt_value + 1e-9);
}

TEST_CASE("crossing-family reduction") {
  // Upward closure of {a} is a ring family; the unique minimal member is {a}.
  std::vector<Set> members = {Set{0b001}, Set{0b011}, Set{0b101}, Set{0b111}};
  MasoInstance inst = min_instance(3, 1, {make_modular(3, {2.0, 5.0, 7.0})},
                                   family_ring_explicit(3, members));
  MinimizeResult r = crossing_family_solve(inst, 2);
  CHECK(r.allocation.parts[0] == Set{0b001});
  CHECK(r.value == Catch::Approx(2.0));

  // Trivial ring family {V}: the facility-location reduction.
  MasoInstance fac = min_instance(
      3, 2, {make_modular(3, {1.0, 9.0, 1.0}), make_modular(3, {9.0, 1.0, 9.0})},
      family_ring_explicit(3, {full_mask(3)}));
  MinimizeResult best = crossing_family_solve(fac, 7);
  REQUIRE(fac.outer.contains(best.allocation.cover()));
  BruteForceResult opt = brute_force_maso(fac);
  CHECK(best.value == Catch::Approx(opt.value));
}

TEST_CASE("level-set identity over disjoint supports") {
  MasoInstance inst = min_instance(
      4, 2, {make_coverage(4, 4, {Set{1}, Set{3}, Set{6}, Set{12}}),
             make_concave_sqrt(4, {1, 2, 3, 4})},
      family_trivial_v(4));
  PreAssignment pre{std::vector<Set>{Set{0b0011}, Set{0b1100}}};
  ValueOracle g = g_function(inst, pre);
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    FractionalAssignment z(2, 4);
    for (int i = 0; i < 2; ++i)
      for_each_element(pre.supports[i],
                       [&](int v) { z.parts[i][v] = rng.uniform01() * 2.0; });
    double joint = lovasz_eval(g, z.aggregate());
    double split = lovasz_eval(inst.objectives[0], z.parts[0]) +
                   lovasz_eval(inst.objectives[1], z.parts[1]);
    CHECK(joint == Catch::Approx(split).margin(1e-9));
  }
}

TEST_CASE("truncated relaxation budgets still return feasible points") {
  MasoInstance inst = min_instance(
      4, 2, {make_concave_sqrt(4, {1, 2, 3, 4}), make_concave_sqrt(4, {4, 3, 2, 1})},
      family_trivial_v(4));
  MaLeResult rushed = solve_ma_le(inst, 1e-12, 1, 0);
  FracPoint agg = rushed.assignment.aggregate();
  for (double x : agg) CHECK(x >= 1.0 - 1e-9);
  MaLeResult settled = solve_ma_le(inst, 1e-9, 2000, 0);
  CHECK(settled.value <= rushed.value + 1e-9);
}

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "maso/checks.hpp"
#include "maso/extensions.hpp"
#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/instance.hpp"
#include "maso/lifting.hpp"
#include "maso/oracle.hpp"

using namespace maso;

namespace {

MasoInstance two_agent_modular(int n, std::vector<double> w1, std::vector<double> w2,
                               FeasibleFamily outer, Sense sense) {
  MasoInstance inst;
  inst.ground = GroundSet(n);
  inst.k = 2;
  inst.objectives = {make_modular(n, std::move(w1)), make_modular(n, std::move(w2))};
  inst.outer = std::move(outer);
  inst.sense = sense;
  return inst;
}

}  // namespace

TEST_CASE("single-agent lift is the identity") {
  MasoInstance inst;
  inst.ground = GroundSet(4);
  inst.k = 1;
  inst.objectives = {make_coverage(4, 4, {Set{1}, Set{3}, Set{6}, Set{12}})};
  inst.outer = family_uniform_matroid(4, 2);
  inst.sense = Sense::kMax;
  LiftedInstance lifted = lift_instance(inst);
  REQUIRE(lifted.lifted_ground.n == 4);
  for (Set s = 0; s < 16; ++s) {
    CHECK(lifted.f(s) == inst.objectives[0](s));
    CHECK(lifted.combined.contains(s) == inst.outer.contains(s));
  }
}

TEST_CASE("modular lift decomposes by agent block") {
  MasoInstance inst =
      two_agent_modular(3, {1.0, 2.0, 4.0}, {8.0, 16.0, 32.0},
                        family_full_powerset(3), Sense::kMax);
  LiftedInstance lifted = lift_instance(inst);
  // Agent 1 takes item 0, agent 2 takes item 1: indices 0 and 3+1.
  Set s = with(with(Set{0}, lifted_index(0, 0, 3)), lifted_index(1, 1, 3));
  CHECK(lifted.f(s) == Catch::Approx(1.0 + 16.0));
  CHECK(lifted.outer_lifted.contains(s));
  // Both agents on the same item: coverage loses cardinality.
  Set clash = with(with(Set{0}, lifted_index(0, 2, 3)), lifted_index(1, 2, 3));
  CHECK_FALSE(lifted.outer_lifted.contains(clash));
}

TEST_CASE("unlift and embed are inverse bijections") {
  Allocation alloc(2);
  alloc.parts = {Set{0b011}, Set{0b100}};
  Set lifted = embed(alloc, 3);
  Allocation back = unlift(lifted, 2, 3);
  CHECK(back.parts == alloc.parts);

  CHECK(unlift(Set{0}, 2, 3).cover() == Set{0});
  Allocation one_agent = unlift(with(with(Set{0}, 0), 1), 2, 3);
  CHECK(one_agent.parts[0] == Set{0b011});
  CHECK(one_agent.parts[1] == Set{0});

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Set s = static_cast<Set>(rng.next_u64()) & full_mask(6);
    CHECK(embed(unlift(s, 2, 3), 3) == s);
  }
}

TEST_CASE("coverage of lifted sets") {
  CHECK(lifted_cov(Set{0}, 2, 3) == Set{0});
  // (1,a) and (2,a) saturate only a.
  Set same = with(with(Set{0}, lifted_index(0, 0, 3)), lifted_index(1, 0, 3));
  CHECK(lifted_cov(same, 2, 3) == Set{0b001});
  // (1,a) and (2,b) saturate both.
  Set different = with(with(Set{0}, lifted_index(0, 0, 3)), lifted_index(1, 1, 3));
  CHECK(lifted_cov(different, 2, 3) == Set{0b011});
}

TEST_CASE("lifted optimum equals the direct optimum on vertex covers") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  MasoInstance inst;
  inst.ground = GroundSet(3);
  inst.k = 2;
  inst.objectives = {make_coverage(3, 3, {Set{1}, Set{2}, Set{4}}),
                     make_coverage(3, 3, {Set{3}, Set{6}, Set{5}})};
  inst.outer = family_vertex_covers(k3);
  inst.sense = Sense::kMin;
  LiftedInstance lifted = lift_instance(inst);
  BruteForceResult direct = brute_force_maso(inst);
  BruteForceSetResult via_lift = brute_force_so(lifted.f, lifted.combined, inst.sense);
  REQUIRE(direct.feasible);
  REQUIRE(via_lift.feasible);
  CHECK(direct.value == via_lift.value);
}

TEST_CASE("lifted matroids remain matroids") {
  MasoInstance inst =
      two_agent_modular(3, {1, 1, 1}, {1, 1, 1}, family_uniform_matroid(3, 2),
                        Sense::kMax);
  LiftedInstance lifted = lift_instance(inst);
  CHECK(check_matroid(lifted.outer_lifted).ok);

  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  MasoInstance graphic =
      two_agent_modular(3, {1, 1, 1}, {1, 1, 1}, family_graphic_forests(k3),
                        Sense::kMax);
  CHECK(check_matroid(lift_instance(graphic).outer_lifted).ok);
}

TEST_CASE("basis cardinality correspondence") {
  FeasibleFamily rank1 = family_uniform_matroid(2, 1);
  MasoInstance inst =
      two_agent_modular(2, {1, 1}, {1, 1}, rank1, Sense::kMax);
  LiftedInstance lifted = lift_instance(inst);

  CHECK(check_bases_correspondence(rank1, lifted.outer_lifted, Set{0}, 2, 2).ok);
  // Both agents hold item a: every basis has size one on both sides.
  Set same = with(with(Set{0}, lifted_index(0, 0, 2)), lifted_index(1, 0, 2));
  CHECK(check_bases_correspondence(rank1, lifted.outer_lifted, same, 2, 2).ok);

  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  FeasibleFamily graphic = family_graphic_forests(k3);
  MasoInstance ginst =
      two_agent_modular(3, {1, 1, 1}, {1, 1, 1}, graphic, Sense::kMax);
  LiftedInstance glifted = lift_instance(ginst);
  // A full lifted triangle: spanning bases have two edges on both sides.
  Set triangle = 0;
  for (int e = 0; e < 3; ++e) triangle = with(triangle, lifted_index(e % 2, e, 3));
  CHECK(check_bases_correspondence(graphic, glifted.outer_lifted, triangle, 2, 3).ok);
}

TEST_CASE("p-system ratio does not grow under lifting") {
  Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  FeasibleFamily matchings = family_matchings(p4);
  CHECK(p_system_ratio(matchings) == Catch::Approx(2.0));
  MasoInstance inst =
      two_agent_modular(3, {1, 1, 1}, {1, 1, 1}, matchings, Sense::kMax);
  LiftedInstance lifted = lift_instance(inst);
  CHECK(p_system_ratio(lifted.outer_lifted) <= 2.0 + 1e-12);
}

TEST_CASE("graph lifting produces agent-major parallel copies") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  LiftedGraph identity = lift_graph(k3, 1);
  CHECK(identity.multigraph.edges == k3.edges);

  LiftedGraph doubled = lift_graph(k3, 2);
  REQUIRE(doubled.multigraph.edges.size() == 6);
  for (int e = 0; e < 6; ++e) {
    CHECK(doubled.copy_of[e] == e % 3);
    CHECK(doubled.agent_of[e] == e / 3);
    CHECK(doubled.multigraph.edges[e] == k3.edges[e % 3]);
  }
}

TEST_CASE("spanning trees of a lifted path count four") {
  Graph p3(3, {{0, 1}, {1, 2}});
  MasoInstance inst =
      two_agent_modular(2, {1, 1}, {1, 1}, family_spanning_trees(p3), Sense::kMax);
  LiftedInstance lifted = lift_instance(inst);
  LiftedGraph lg = lift_graph(p3, 2);
  FeasibleFamily direct = family_spanning_trees(lg.multigraph);
  int via_lift = 0, via_graph = 0;
  for (Set s = 0; s < 16; ++s) {
    if (lifted.outer_lifted.contains(s)) ++via_lift;
    if (direct.contains(s)) ++via_graph;
  }
  CHECK(via_lift == 4);
  CHECK(via_graph == 4);
}

TEST_CASE("per-agent matroids lift to a matroid slice family") {
  MasoInstance inst =
      two_agent_modular(3, {1, 1, 1}, {1, 1, 1}, family_full_powerset(3),
                        Sense::kMax);
  inst.per_agent = {family_uniform_matroid(3, 1),
                    family_partition_matroid(3, {Set{0b011}, Set{0b100}}, {1, 1})};
  LiftedInstance lifted = lift_instance(inst);
  CHECK(check_matroid(lifted.agent_lifted).ok);
  // Combined membership needs both the coverage test and the slice test.
  Set ok_set = with(with(Set{0}, lifted_index(0, 0, 3)), lifted_index(1, 1, 3));
  CHECK(lifted.combined.contains(ok_set));
  Set too_much =
      with(with(Set{0}, lifted_index(0, 0, 3)), lifted_index(0, 1, 3));
  CHECK_FALSE(lifted.combined.contains(too_much));
}

TEST_CASE("multilinear additivity across agent blocks") {
  MasoInstance inst =
      two_agent_modular(4, {1, 2, 3, 4}, {4, 3, 2, 1}, family_full_powerset(4),
                        Sense::kMax);
  inst.objectives[0] = make_coverage(4, 4, {Set{1}, Set{3}, Set{6}, Set{12}});
  LiftedInstance lifted = lift_instance(inst);
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    FracPoint z_bar(8);
    for (double& x : z_bar) x = rng.uniform01();
    double joint = multilinear_eval_exact(lifted.f, z_bar);
    double split =
        multilinear_eval_exact(inst.objectives[0], FracPoint(z_bar.begin(), z_bar.begin() + 4)) +
        multilinear_eval_exact(inst.objectives[1], FracPoint(z_bar.begin() + 4, z_bar.end()));
    CHECK(joint == Catch::Approx(split).margin(1e-9));
  }
}

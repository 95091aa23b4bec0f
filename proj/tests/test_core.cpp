#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "maso/checks.hpp"
#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/value_oracle.hpp"

using namespace maso;

TEST_CASE("marginal values of standard functions") {
  ValueOracle card = make_modular(3, {1.0, 1.0, 1.0});
  CHECK(eval_marginal(card, 2, Set{0b011}) == Catch::Approx(1.0));

  ValueOracle capped = make_concave_min_cap(3, {1.0, 1.0, 1.0}, 1.0);
  CHECK(eval_marginal(capped, 2, Set{0b011}) == Catch::Approx(0.0));

  // Element 0 covers item x, element 1 covers items x and y: adding 0 after 1
  // contributes nothing.
  ValueOracle cover = make_coverage(2, 2, {Set{0b01}, Set{0b11}});
  CHECK(eval_marginal(cover, 0, Set{0b10}) == Catch::Approx(0.0));

  CHECK_THROWS_AS(eval_marginal(card, 0, Set{0b001}), PreconditionError);
}

TEST_CASE("standard function values") {
  ValueOracle mod = make_modular(2, {2.0, 3.0});
  CHECK(mod(Set{0b11}) == Catch::Approx(5.0));
  CHECK(mod(Set{0}) == Catch::Approx(0.0));

  ValueOracle capped = make_concave_min_cap(2, {1.0, 1.0}, 1.0);
  CHECK(capped(Set{0b11}) == Catch::Approx(1.0));

  ValueOracle cover = make_coverage(2, 2, {Set{0b01}, Set{0b11}});
  CHECK(cover(Set{0b10}) == Catch::Approx(2.0));
  CHECK(cover(Set{0b01}) == Catch::Approx(1.0));
}

TEST_CASE("submodularity checker finds the quadratic witness") {
  ValueOracle square(2, [](Set s) { return static_cast<double>(set_size(s) * set_size(s)); },
                     true, false, "square");
  Verdict v = check_submodular(square);
  REQUIRE_FALSE(v.ok);
  // f({0}) + f({1}) = 2 < 4 = f({0,1}) + f(empty).
  CHECK(((v.witness_a == Set{0b01} && v.witness_b == Set{0b10}) ||
         (v.witness_a == Set{0b10} && v.witness_b == Set{0b01})));
}

TEST_CASE("monotonicity checker flags a cut function") {
  Graph path(3, {{0, 1}, {1, 2}});
  ValueOracle cut = make_graph_cut(path);
  CHECK_FALSE(cut.claims_monotone());
  Verdict v = check_monotone(cut);
  CHECK_FALSE(v.ok);
}

TEST_CASE("property checkers respect their capacity caps") {
  ValueOracle wide = make_modular(15, std::vector<double>(15, 1.0));
  CHECK_THROWS_AS(check_submodular(wide), CapacityError);
  Verdict sampled = check_submodular_sampled(wide, 7, 200);
  CHECK(sampled.ok);
}

TEST_CASE("standard function zoo passes its claimed properties") {
  struct Entry {
    const char* label;
    ValueOracle f;
  };
  Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}});
  std::vector<Entry> zoo = {
      {"modular", make_modular(6, {1, 2, 3, 1, 2, 3})},
      {"coverage", make_coverage(6, 4, {Set{1}, Set{3}, Set{6}, Set{8}, Set{9}, Set{15}})},
      {"facility", make_facility_location(6, std::vector<std::vector<double>>(
                                                 6, {1, 2, 3, 1, 2, 3}))},
      {"cut", make_graph_cut(g)},
      {"matroid-rank", make_matroid_rank(family_uniform_matroid(6, 3))},
      {"sqrt", make_concave_sqrt(6, {1, 1, 2, 2, 3, 3})},
      {"min-cap", make_concave_min_cap(6, {1, 1, 2, 2, 3, 3}, 4.0)},
  };
  for (auto& e : zoo) {
    INFO(e.label);
    CHECK(check_submodular(e.f).ok);
    if (e.f.claims_monotone()) CHECK(check_monotone(e.f).ok);
    CHECK(check_normalized(e.f).ok);
  }
}

TEST_CASE("blockers of standard families") {
  std::vector<Set> trivial = compute_blocker(family_trivial_v(3));
  std::sort(trivial.begin(), trivial.end());
  CHECK(trivial == std::vector<Set>{Set{1}, Set{2}, Set{4}});

  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<Set> vc = compute_blocker(family_vertex_covers(k3));
  std::sort(vc.begin(), vc.end());
  CHECK(vc == std::vector<Set>{Set{0b011}, Set{0b101}, Set{0b110}});

  // Connected spanning subgraphs of a path: every edge is a bridge, so each
  // single edge blocks.
  Graph path(3, {{0, 1}, {1, 2}});
  std::vector<Set> bridges = compute_blocker(family_connected_spanning(path));
  std::sort(bridges.begin(), bridges.end());
  CHECK(bridges == std::vector<Set>{Set{0b01}, Set{0b10}});
}

TEST_CASE("blocker lists are antichains and involute on upward-closed input") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  FeasibleFamily fam = family_vertex_covers(k3);
  std::vector<Set> blocker = compute_blocker(fam);
  for (Set a : blocker)
    for (Set b : blocker)
      if (a != b) CHECK((a & ~b) != 0);
  std::vector<Set> twice = minimal_members(family_blocker(3, blocker));
  std::vector<Set> minimal = minimal_members(fam);
  std::sort(twice.begin(), twice.end());
  std::sort(minimal.begin(), minimal.end());
  CHECK(twice == minimal);
}

TEST_CASE("peeling reaches a minimal member") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  FeasibleFamily vc = family_vertex_covers(k3);
  CHECK(peel_to_minimal(vc, full_mask(3)) == Set{0b011});

  FeasibleFamily everything = family_trivial_v(4);
  CHECK(peel_to_minimal(everything, full_mask(4)) == full_mask(4));
}

TEST_CASE("family kinds answer membership correctly") {
  FeasibleFamily uniform = family_uniform_matroid(4, 2);
  CHECK(uniform.contains(Set{0b0011}));
  CHECK_FALSE(uniform.contains(Set{0b0111}));
  CHECK(uniform.downward_closed());

  FeasibleFamily part = family_partition_matroid(4, {Set{0b0011}, Set{0b1100}}, {1, 2});
  CHECK(part.contains(Set{0b1101}));
  CHECK_FALSE(part.contains(Set{0b0011}));

  Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  FeasibleFamily forests = family_graphic_forests(square);
  CHECK(forests.contains(Set{0b0111}));
  CHECK_FALSE(forests.contains(Set{0b1111}));

  FeasibleFamily matchings = family_matchings(square);
  CHECK(matchings.contains(Set{0b0101}));
  CHECK_FALSE(matchings.contains(Set{0b0011}));

  FeasibleFamily paths = family_st_paths(square, 0, 2);
  CHECK(paths.contains(Set{0b0011}));
  CHECK(paths.contains(Set{0b1100}));
  CHECK_FALSE(paths.contains(Set{0b1111}));

  FeasibleFamily connected = family_st_connected(square, 0, 2);
  CHECK(connected.contains(Set{0b1111}));
  CHECK_FALSE(connected.contains(Set{0b0001}));
}

TEST_CASE("matroid checker accepts matroids and rejects a non-matroid") {
  CHECK(check_matroid(family_uniform_matroid(5, 2)).ok);
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(check_matroid(family_graphic_forests(k4)).ok);
  // {empty, {0}, {0,1}} is not downward closed: {1} is missing.
  FeasibleFamily bad = family_explicit(2, {Set{0}, Set{1}, Set{3}});
  CHECK_FALSE(check_matroid(bad).ok);
}

TEST_CASE("p-system ratios") {
  CHECK(p_system_ratio(family_uniform_matroid(5, 3)) == Catch::Approx(1.0));
  // Path on four vertices: maximal matchings have sizes 1 and 2.
  Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(p_system_ratio(family_matchings(p4)) == Catch::Approx(2.0));
  FeasibleFamily two = family_intersection(
      family_partition_matroid(4, {Set{0b0011}, Set{0b1100}}, {1, 1}),
      family_partition_matroid(4, {Set{0b0101}, Set{0b1010}}, {1, 1}));
  CHECK(p_system_ratio(two) <= 2.0 + 1e-12);
}

TEST_CASE("memoized oracle values are bitwise stable") {
  int calls = 0;
  ValueOracle f(4,
                [&calls](Set s) {
                  ++calls;
                  return static_cast<double>(set_size(s)) * 0.125;
                },
                true, true, "counted");
  double first = f(Set{0b1010});
  double again = f(Set{0b1010});
  CHECK(first == again);
  CHECK(calls == 2);  // normalization probe at empty set plus one evaluation
}

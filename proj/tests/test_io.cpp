#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "maso/generators.hpp"
#include "maso/json_io.hpp"
#include "maso/verify.hpp"

using namespace maso;

TEST_CASE("function specs round-trip through JSON tags") {
  Json modular = {{"type", "modular"}, {"weights", {1.5, 2.5}}};
  ValueOracle m = function_from_json(modular, 2);
  CHECK(m(Set{0b11}) == Catch::Approx(4.0));

  Json coverage = {{"type", "coverage"},
                   {"items", 3},
                   {"covers", Json::array({Json::array({0}), Json::array({0, 2})})}};
  ValueOracle c = function_from_json(coverage, 2);
  CHECK(c(Set{0b01}) == Catch::Approx(1.0));
  CHECK(c(Set{0b11}) == Catch::Approx(2.0));

  Json facility = {{"type", "facility-location"},
                   {"utility", Json::array({Json::array({1.0, 3.0})})}};
  CHECK(function_from_json(facility, 2)(Set{0b11}) == Catch::Approx(3.0));

  Json cut = {{"type", "graph-cut"},
              {"graph", {{"vertices", 2}, {"edges", Json::array({Json::array({0, 1})})}}}};
  CHECK(function_from_json(cut, 2)(Set{0b01}) == Catch::Approx(1.0));

  Json rank = {{"type", "matroid-rank"},
               {"matroid", {{"type", "uniform-matroid"}, {"rank", 1}}}};
  CHECK(function_from_json(rank, 2)(Set{0b11}) == Catch::Approx(1.0));

  Json sqrt_spec = {{"type", "concave-of-modular"},
                    {"concave", "sqrt"},
                    {"weights", {4.0, 0.0}}};
  CHECK(function_from_json(sqrt_spec, 2)(Set{0b01}) == Catch::Approx(2.0));

  Json capped = {{"type", "concave-of-modular"},
                 {"concave", "min-cap"},
                 {"weights", {1.0, 1.0}},
                 {"cap", 1.5}};
  CHECK(function_from_json(capped, 2)(Set{0b11}) == Catch::Approx(1.5));

  Json combo = {{"type", "sum"},
                {"terms", Json::array({modular,
                                       {{"type", "scale"},
                                        {"inner", modular},
                                        {"factor", 0.5}}})}};
  CHECK(function_from_json(combo, 2)(Set{0b11}) == Catch::Approx(6.0));

  CHECK_THROWS_AS(function_from_json(Json{{"type", "mystery"}}, 2),
                  PreconditionError);
}

TEST_CASE("family specs round-trip through JSON tags") {
  CHECK(family_from_json(Json{{"type", "full-powerset"}}, 2).contains(Set{0}));
  CHECK_FALSE(family_from_json(Json{{"type", "trivial-v"}}, 2).contains(Set{0b01}));

  Json expl = {{"type", "explicit"},
               {"members", Json::array({Json::array({0}), Json::array({0, 1})})},
               {"upward_closed", true}};
  FeasibleFamily e = family_from_json(expl, 2);
  CHECK(e.contains(Set{0b01}));
  CHECK_FALSE(e.contains(Set{0b10}));

  Json part = {{"type", "partition-matroid"},
               {"parts", Json::array({Json::array({0, 1}), Json::array({2})})},
               {"caps", Json::array({1, 1})}};
  FeasibleFamily p = family_from_json(part, 3);
  CHECK(p.contains(Set{0b101}));
  CHECK_FALSE(p.contains(Set{0b011}));

  Json blocker = {{"type", "blocker"},
                  {"blocker", Json::array({Json::array({0, 1})})}};
  FeasibleFamily b = family_from_json(blocker, 2);
  CHECK(b.contains(Set{0b10}));
  CHECK_FALSE(b.contains(Set{0}));

  Json ring = {{"type", "ring"},
               {"members", Json::array({Json::array({0}), Json::array({0, 1})})}};
  FeasibleFamily r = family_from_json(ring, 2);
  CHECK(r.contains(Set{0b01}));
  CHECK_FALSE(r.contains(Set{0b10}));

  Json crossing = {{"type", "crossing"},
                   {"members", Json::array({Json::array({0}), Json::array({1})})}};
  FeasibleFamily x = family_from_json(crossing, 2);
  CHECK(x.contains(Set{0b01}));
  CHECK(x.contains(Set{0b10}));
  CHECK_FALSE(x.contains(Set{0b11}));

  Json inter = {{"type", "intersection"},
                {"first", {{"type", "uniform-matroid"}, {"rank", 2}}},
                {"second", part}};
  FeasibleFamily i = family_from_json(inter, 3);
  CHECK(i.contains(Set{0b101}));
  CHECK_FALSE(i.contains(Set{0b011}));

  Json paths = {{"type", "st-paths"},
                {"graph",
                 {{"vertices", 3},
                  {"edges", Json::array({Json::array({0, 1}), Json::array({1, 2})})}}},
                {"s", 0},
                {"t", 2}};
  FeasibleFamily sp = family_from_json(paths, 2);
  CHECK(sp.contains(Set{0b11}));
  CHECK_FALSE(sp.contains(Set{0b01}));

  CHECK_THROWS_AS(family_from_json(Json{{"type", "mystery"}}, 2),
                  PreconditionError);
}

TEST_CASE("generated documents are deterministic and parseable") {
  for (const std::string& kind : generator_kinds()) {
    Json a = generate_instance(kind, GeneratorParams{}, 7);
    Json b = generate_instance(kind, GeneratorParams{}, 7);
    CHECK(a.dump() == b.dump());
    ParsedInstance parsed = instance_from_json(a);
    CHECK(parsed.instance.n() >= 2);
    CHECK(static_cast<int>(parsed.instance.objectives.size()) == parsed.instance.k);
    CHECK(parsed.id == a.at("id").get<std::string>());

    // Two separate parses agree on 100 probes.
    ParsedInstance again = instance_from_json(b);
    Rng rng(5);
    for (int probe = 0; probe < 100; ++probe) {
      Set s = rng.next_u64() & full_mask(parsed.instance.n());
      int agent = rng.uniform_index(parsed.instance.k);
      CHECK(parsed.instance.objectives[agent](s) ==
            again.instance.objectives[agent](s));
      CHECK(parsed.instance.outer.contains(s) == again.instance.outer.contains(s));
    }
  }
}

TEST_CASE("vertex-cover documents carry their blocker") {
  Json doc = generate_instance("vertex-cover", GeneratorParams{.n = 3, .complete = true}, 1);
  REQUIRE(doc.at("outer_family").contains("blocker"));
  CHECK(doc.at("outer_family").at("blocker").size() == 3);  // K3 edge count
  ParsedInstance parsed = instance_from_json(doc);
  // The embedded blocker entries match recomputed family membership.
  for (const auto& entry : doc.at("outer_family").at("blocker")) {
    Set edge = set_from_json(entry, 3);
    CHECK(set_size(edge) == 2);
    CHECK_FALSE(parsed.instance.outer.contains(full_mask(3) & ~edge));
  }
}

TEST_CASE("sensor budget becomes the uniform-matroid rank") {
  Json doc = generate_instance("sensor", GeneratorParams{.n = 5, .budget = 2}, 3);
  CHECK(doc.at("outer_family").at("type").get<std::string>() == "uniform-matroid");
  CHECK(doc.at("outer_family").at("rank").get<int>() == 2);
  CHECK(doc.at("sense").get<std::string>() == "max");
}

TEST_CASE("report serialization is stable") {
  ReportRow row;
  row.instance_id = "k3";
  row.algorithm = "fracture";
  row.seed = 3;
  row.feasible = true;
  row.value = 2.0;
  row.fractional_value = 1.5;
  row.ratio = 1.5;
  row.ratio_defined = true;
  ReportRow bare;
  bare.instance_id = "k3";
  bare.algorithm = "disjointify";
  bare.seed = 4;
  std::string csv = report_to_csv({row, bare});
  CHECK(csv ==
        "instance,algorithm,seed,feasible,value,fractional_value,ratio,runtime_ms\n"
        "k3,fracture,3,true,2,1.5,1.5,0\n"
        "k3,disjointify,4,false,0,0,,0\n");

  Json j = report_to_json("k3", {row});
  CHECK(j.at("instance").get<std::string>() == "k3");
  CHECK(j.at("rows").size() == 1);
  CHECK(j.at("rows").at(0).at("cost").get<double>() == 2.0);
  CHECK(j.at("rows").at(0).at("ratio_vs_bruteforce").get<double>() == 1.5);
}

TEST_CASE("experiment reports are byte-identical across runs") {
  Json doc = generate_instance("welfare", GeneratorParams{.n = 4, .k = 2}, 7);
  ParsedInstance parsed = instance_from_json(doc);
  std::vector<std::string> algos = {"lifted-greedy", "maximize-pipeline"};
  auto rows1 = run_experiment(parsed, algos, 0, 2, false);
  auto rows2 = run_experiment(parsed, algos, 0, 2, false);
  CHECK(report_to_csv(rows1) == report_to_csv(rows2));
  CHECK(report_to_json(parsed.id, rows1).dump(2) ==
        report_to_json(parsed.id, rows2).dump(2));

  REQUIRE(rows1.size() == 6);
  // Rows come back ordered by (instance, algorithm, seed).
  CHECK(rows1[0].algorithm == "lifted-greedy");
  CHECK(rows1[3].algorithm == "maximize-pipeline");
  for (int s = 0; s < 3; ++s) {
    CHECK(rows1[s].seed == static_cast<std::uint64_t>(s));
    CHECK(rows1[3 + s].seed == static_cast<std::uint64_t>(s));
  }
  for (const auto& r : rows1) {
    CHECK(r.feasible);
    CHECK(r.runtime_ms == 0.0);
  }
}

#include "fixtures.hpp"
#include "mgp/enumerate.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace mgp;
using fixtures::load;
using fixtures::whole_edge;

TEST_CASE("bundled graphs parse") {
  auto fig1 = load("fig1.json");
  CHECK(fig1->vertex_count() == 4);
  CHECK(fig1->edge_count() == 6);
  CHECK(fig1->total_length() == doctest::Approx(4.0));
  auto fig7 = load("fig7.json");
  CHECK(fig7->vertex_count() == 3);
  CHECK(fig7->edge_count() == 9);
}

TEST_CASE("graph file diagnostics") {
  CHECK_THROWS_WITH_AS(parse_graph_text(R"({"vertices": ["a"], "edges": []})"), doctest::Contains("no edges"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse_graph_text(R"({"vertices": ["a","b","c","d"],
      "edges": [{"id":"x","u":"a","v":"b","length":1},{"id":"y","u":"c","v":"d","length":1}]})"),
                       doctest::Contains("{a,b}"), InvalidInput);
  CHECK_THROWS_WITH_AS(parse_graph_text("{\"vertices\": [\"a\",\n \"b\"], \"edges\": [}"), doctest::Contains("line 2"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse_graph_text(R"({"vertices": ["a","b"], "edges": [{"id":"x","u":"a","v":"b","length":"1"}]})"),
                       doctest::Contains("edges[0].length"), InvalidInput);
  CHECK_THROWS_AS(parse_graph_text(R"({"vertices": ["a","b"], "edges": [{"id":"x","u":"a","v":"b","length":-1}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_graph_text(R"({"vertices": ["a","a"], "edges": [{"id":"x","u":"a","v":"a","length":1}]})"),
                  InvalidInput);
}

TEST_CASE("boundary sizes of the pumpkin subgraphs") {
  auto g = load("fig1.json");
  Subgraph glued = fixtures::fig1_pumpkin(g);
  CHECK(boundary_size(glued) == 2);
  CHECK(total_length(glued) == doctest::Approx(2.0));
  CHECK(perimeter(glued) == 2);
  CHECK(perimeter_oracle(glued) == doctest::Approx(2.0));

  // v split four ways
  std::vector<Segment> segs{whole_edge(*g, "p1"), whole_edge(*g, "p2"), whole_edge(*g, "p3"), whole_edge(*g, "p4")};
  std::vector<Descendant> desc;
  for (int i = 0; i < 4; ++i) desc.push_back({{}, {{i, EndSide::From}}});
  desc.push_back({{}, {{0, EndSide::To}, {1, EndSide::To}, {2, EndSide::To}, {3, EndSide::To}}});
  Subgraph split(g, segs, desc);
  CHECK(boundary_size(split) == 4);
  CHECK(boundary_size(split, BoundaryMode::Count) == 1);
  CHECK_THROWS_AS(perimeter(split), InvalidInput);

  Subgraph whole = Subgraph::whole(g);
  CHECK(boundary_size(whole) == 0);
  CHECK(perimeter(whole) == 0);
  CHECK(perimeter_oracle(whole) == 0.0);
}

TEST_CASE("total length") {
  auto g = load("interval.json");
  CHECK(total_length(Subgraph::whole(g)) == doctest::Approx(1.0));
  auto loop = share(parse_graph_text(R"({"vertices":["x"],"edges":[{"id":"o","u":"x","v":"x","length":1}]})"));
  Subgraph two = Subgraph::maximally_glued(loop, {{0, 0.0, 0.3}, {0, 0.5, 1.0}});
  CHECK(total_length(two) == doctest::Approx(0.8));
  CHECK(boundary_size(two) == 2);
}

TEST_CASE("subgraph validation") {
  auto g = load("interval.json");
  CHECK_THROWS_AS(Subgraph::maximally_glued(g, {{0, 0.0, 0.4}, {0, 0.6, 1.0}}), InvalidInput);  // disconnected
  CHECK_THROWS_AS(Subgraph::maximally_glued(g, {{0, 0.0, 0.6}, {0, 0.4, 1.0}}), InvalidInput);  // overlap
  CHECK_THROWS_AS(Subgraph::maximally_glued(g, {{0, 0.5, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(Subgraph(g, {{0, 0.0, 1.0}}, {{{}, {{0, EndSide::From}}}}), InvalidInput);  // end left over
}

TEST_CASE("perimeter oracle on hand-built subgraphs") {
  auto g = load("fig1.json");
  // interior segment: two cut points
  Subgraph mid = Subgraph::maximally_glued(g, {{g->edge_index("e1"), 0.25, 0.75}});
  CHECK(perimeter(mid) == 2);
  CHECK(perimeter_oracle(mid) == doctest::Approx(2.0));
  // deg 6 with 4 ends at v, and deg 4 with 2 ends at w
  Subgraph four = Subgraph::maximally_glued(
      g, {whole_edge(*g, "e1"), whole_edge(*g, "e2"), whole_edge(*g, "p1"), whole_edge(*g, "p2")});
  CHECK(perimeter_oracle(four) == doctest::Approx(4.0));
  bool sawV = false;
  for (const auto& b : four.boundary())
    if (b.degreeInGraph == 6) {
      CHECK(b.effectiveDegree == 2);
      sawV = true;
    }
  CHECK(sawV);

  auto chain = load("fig7.json");
  std::vector<Segment> big;
  for (std::string id : {"a1", "a2", "a3", "a4", "a5"}) big.push_back(whole_edge(*chain, id));
  Subgraph side = Subgraph::maximally_glued(chain, big);
  CHECK(perimeter_oracle(side) == doctest::Approx(4.0));
  CHECK(perimeter(side) == 4);
}

namespace {

// class of the centre/right pictures of the mutant cut: e1 = [1 2], e2 = [2], p_i = [2 3]
ConfigurationClass mutant_class(const GraphPtr& g) {
  std::vector<std::vector<int>> labels{{1, 2}, {2}, {2, 3}, {2, 3}, {2, 3}, {2, 3}};
  return ConfigurationClass::coarsest(g, 3, labels);
}

}  // namespace

TEST_CASE("lower semicontinuity instance") {
  auto g = load("fig1.json");
  auto cls = mutant_class(g);
  for (int n : {4, 16, 256}) {
    double t = 1.0 / n;
    SegmentLengths len{{1 - t, t}, {1.0}, {t / 2, 0.5 - t / 2}, {t / 2, 0.5 - t / 2}, {t / 2, 0.5 - t / 2},
                       {t / 2, 0.5 - t / 2}};
    Partition p = realize(cls, len);
    CHECK(boundary_size(p.part(1)) == 5);
  }
  SegmentLengths limit{{1.0, 0.0}, {1.0}, {0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}};
  Partition p = realize(cls, limit);
  CHECK(boundary_size(p.part(1)) == 1);
  // the pumpkin part keeps four separate descendants at v
  CHECK(boundary_size(p.part(2)) == 4);
  CHECK(total_length(p.part(2)) == doctest::Approx(2.0));
}

TEST_CASE("realize") {
  auto g = load("fig1.json");
  // pendant parts with stubs of length 1/n glued to the pumpkin part
  std::vector<std::vector<int>> labels{{1, 3}, {2, 3}, {3}, {3}, {3}, {3}};
  auto cls = ConfigurationClass::coarsest(g, 3, labels);
  for (int n : {2, 10, 100}) {
    double t = 1.0 / n;
    SegmentLengths len{{1 - t, t}, {1 - t, t}, {0.5}, {0.5}, {0.5}, {0.5}};
    Partition p = realize(cls, len);
    CHECK(boundary_size(p.part(0)) / total_length(p.part(0)) == doctest::Approx(n / (n - 1.0)));
    CHECK(boundary_size(p.part(1)) / total_length(p.part(1)) == doctest::Approx(n / (n - 1.0)));
    CHECK(boundary_size(p.part(2)) == 2);
    CHECK(boundary_size(p.part(2)) / total_length(p.part(2)) == doctest::Approx(n / (n + 1.0)));
    CHECK(class_of(p) == cls);
  }
  SegmentLengths zero{{1.0, 0.0}, {1.0, 0.0}, {0.5}, {0.5}, {0.5}, {0.5}};
  Partition p = realize(cls, zero);
  auto limit = class_of(p);
  CHECK_FALSE(limit == cls);
  CHECK(limit.max_cuts() < cls.max_cuts());
  CHECK(boundary_size(p.part(2)) == 2);
  CHECK(total_length(p.part(2)) == doctest::Approx(2.0));

  CHECK_THROWS_AS(realize(cls, SegmentLengths{{0.5, 0.4}, {1.0, 0.0}, {0.5}, {0.5}, {0.5}, {0.5}}), InvalidInput);
}

TEST_CASE("realization of the nominal point reproduces the class") {
  auto g = load("fig1.json");
  std::size_t checked = 0;
  enumerate_reduced_classes(g, 3, {1}, {}, [&](const ConfigurationClass& c) {
    Partition p = realize(c, c.nominal_lengths());
    CHECK(class_of(p) == c);
    return ++checked < 400;
  });
  CHECK(checked == 400);
}

TEST_CASE("enumeration on a single edge") {
  auto g = load("interval.json");
  for (bool exhaustive : {false, true}) {
    std::vector<std::string> ids;
    auto rep = enumerate_configuration_classes(g, 2, {1}, exhaustive, [&](const ConfigurationClass& c) {
      ids.push_back(c.id());
      return true;
    });
    CHECK(ids.size() == 1);
    CHECK(rep.warnings.empty());
  }
  std::size_t open = 0, closed = 0;
  enumerate_configuration_classes(g, 2, {2}, false, [&](const ConfigurationClass& c) {
    ++open;
    CHECK(c.max_cuts() <= 2);
    return true;
  });
  enumerate_configuration_classes(g, 2, {2}, true, [&](const ConfigurationClass& c) {
    ++closed;
    CHECK_FALSE(c.has_unassigned());
    return true;
  });
  CHECK(open > closed);
  auto rep = enumerate_configuration_classes(g, 3, {1}, false, [](const ConfigurationClass&) { return true; });
  CHECK(rep.emitted == 0);
  CHECK(rep.warnings.size() == 1);
}

TEST_CASE("enumeration of the first figure contains both cuts at v") {
  auto g = load("fig1.json");
  // Fig 4 left: pendants alone, pumpkin glued at v
  auto left = ConfigurationClass::coarsest(g, 3, {{1}, {2}, {3}, {3}, {3}, {3}}).canonical_encoding();
  // Fig 4 centre: e2 part glued, pumpkin with four descendants at v
  std::vector<std::vector<int>> blocks{{1}, {1}, {}, {}};
  blocks[2] = {1, 2, 3, 4, 5, 6};
  blocks[3] = {1, 1, 1, 1};
  auto centre = ConfigurationClass(g, 3, {{1}, {2}, {3}, {3}, {3}, {3}}, blocks).canonical_encoding();
  bool sawLeft = false, sawCentre = false;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> order;
  enumerate_configuration_classes(g, 3, {0}, false, [&](const ConfigurationClass& c) {
    auto enc = c.canonical_encoding();
    CHECK(seen.insert(enc).second);
    order.push_back(enc);
    sawLeft |= enc == left;
    sawCentre |= enc == centre;
    return true;
  });
  CHECK(sawLeft);
  CHECK(sawCentre);
  CHECK(left != centre);
  std::vector<std::vector<int>> again;
  enumerate_configuration_classes(g, 3, {0}, false, [&](const ConfigurationClass& c) {
    again.push_back(c.canonical_encoding());
    return true;
  });
  CHECK(again == order);
}

TEST_CASE("reduced enumeration is duplicate free up to automorphisms") {
  auto g = load("fig1.json");
  std::vector<ConfigurationClass> all;
  enumerate_reduced_classes(g, 2, {1}, {}, [&](const ConfigurationClass& c) {
    all.push_back(c);
    return true;
  });
  REQUIRE(all.size() > 10);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t i = rng() % all.size(), j = rng() % all.size();
    if (i == j) continue;
    CHECK_FALSE(equivalent_classes(all[i], all[j]));
  }
  CHECK(vertex_automorphisms(*g).size() == 2);
}

TEST_CASE("effective degree bounds and count mode on enumerated parts") {
  for (std::string name : {"fig1.json", "fig7.json", "star3.json", "lasso.json"}) {
    auto g = load(name);
    enumerate_configuration_classes(g, 2, {1, 3000}, false, [&](const ConfigurationClass& c) {
      Partition p = realize(c, c.nominal_lengths());
      for (const auto& part : p.parts()) {
        for (const auto& b : part.boundary()) {
          CHECK(b.effectiveDegree >= 1);
          CHECK(b.effectiveDegree <= b.degreeInGraph / 2);
        }
        CHECK(boundary_size(part, BoundaryMode::Count) <= boundary_size(part));
        if (part.boundary().size() == 0) continue;
        bool single = true;
        for (const auto& b : part.boundary())
          for (std::size_t d = 0; d < part.descendants().size(); ++d)
            if (static_cast<int>(d) != b.descendant &&
                same_point(part.parent(), part.descendants()[d].point, part.descendants()[b.descendant].point))
              single = false;
        if (single) CHECK(perimeter_oracle(part) == doctest::Approx(perimeter(part)).epsilon(1e-12));
      }
      return true;
    });
  }
}

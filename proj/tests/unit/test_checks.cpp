#include "fixtures.hpp"
#include "mgp/checks.hpp"

#include <doctest.h>

using namespace mgp;
using fixtures::load;

TEST_CASE("sampled subgraphs have a boundary and simple gluing") {
  auto g = load("fig1.json");
  auto a = sample_subgraphs(g, 6, 3), b = sample_subgraphs(g, 6, 3);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_FALSE(a[i].boundary().empty());
    CHECK(total_length(a[i]) == total_length(b[i]));
    CHECK(perimeter(a[i]) == boundary_size(a[i]));
  }
}

TEST_CASE("property suites pass on the corpus") {
  std::vector<NamedGraph> corpus;
  for (std::string name : {"fig1", "fig7", "star3", "lasso", "path2"}) corpus.push_back({name, load(name + ".json")});
  auto report = run_property_suites(corpus);
  CHECK(report.sampledSubgraphs == 20);
  for (const auto& s : report.suites) {
    INFO(s.name);
    for (const auto& m : s.messages) INFO(m);
    CHECK(s.ok());
  }
  CHECK(report.ok());
  CHECK(report.seconds < 60);
}

#include "fixtures.hpp"
#include "mgp/cheeger.hpp"

#include <doctest.h>

#include <cmath>

using namespace mgp;
using fixtures::load;
using fixtures::whole_edge;

namespace {

ConfigurationClass fig4_left(const GraphPtr& g) {
  return ConfigurationClass::coarsest(g, 3, {{1}, {2}, {3}, {3}, {3}, {3}});
}

ConfigurationClass fig7_split(const GraphPtr& g) {
  return ConfigurationClass::coarsest(g, 2, {{1}, {1}, {1}, {1}, {1}, {2}, {2}, {2}, {2}});
}

// compositions of n steps into `parts` positive pieces
void compositions(int n, int parts, std::vector<int>& cur, const std::function<void()>& fn) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    int used = 0;
    for (int c : cur) used += c;
    if (n - used < 1) return;
    cur.push_back(n - used);
    fn();
    cur.pop_back();
    return;
  }
  int used = 0;
  for (int c : cur) used += c;
  for (int c = 1; c <= n - used - (parts - 1 - static_cast<int>(cur.size())); ++c) {
    cur.push_back(c);
    compositions(n, parts, cur, fn);
    cur.pop_back();
  }
}

// min over the grid of cut positions with step length / steps
double grid_minimum(const ConfigurationClass& cls, int steps) {
  const auto& labels = cls.labels();
  std::vector<EdgeIndex> cut;
  for (std::size_t e = 0; e < labels.size(); ++e)
    if (labels[e].size() > 1) cut.push_back(static_cast<EdgeIndex>(e));
  double best = INFINITY;
  SegmentLengths x = cls.nominal_lengths();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cut.size()) {
      try {
        best = std::min(best, cheeger_energy(realize(cls, x)));
      } catch (const InvalidInput&) {
      }
      return;
    }
    EdgeIndex e = cut[i];
    double len = cls.graph().edge(e).length;
    std::vector<int> cur;
    compositions(steps, static_cast<int>(labels[e].size()), cur, [&] {
      for (std::size_t j = 0; j < cur.size(); ++j) x[e][j] = len * cur[j] / steps;
      rec(i + 1);
    });
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("cheeger energies of the worked partitions") {
  auto g = load("fig1.json");
  Partition left = realize(fig4_left(g), fig4_left(g).nominal_lengths());
  CHECK(cheeger_energy(left) == doctest::Approx(1.0));
  std::vector<std::vector<int>> blocks{{1}, {1}, {1, 2, 3, 4, 5, 6}, {1, 1, 1, 1}};
  ConfigurationClass centre(g, 3, {{1}, {2}, {3}, {3}, {3}, {3}}, blocks);
  CHECK(cheeger_energy(realize(centre, centre.nominal_lengths())) == doctest::Approx(2.0));

  auto chain = load("fig7.json");
  Partition split = realize(fig7_split(chain), fig7_split(chain).nominal_lengths());
  CHECK(cheeger_energy(split) == doctest::Approx(1.0));
  CHECK(cheeger_energy(split, BoundaryMode::Count) == doctest::Approx(0.25));
}

TEST_CASE("p-norm cheeger energy") {
  auto g = load("fig1.json");
  Partition left = realize(fig4_left(g), fig4_left(g).nominal_lengths());
  CHECK(std::abs(cheeger_energy_p(left, 64) - 1.0) < 0.05);
  auto i = load("interval.json");
  Partition halves({Subgraph::maximally_glued(i, {{0, 0.0, 0.5}}), Subgraph::maximally_glued(i, {{0, 0.5, 1.0}})}, true);
  CHECK(cheeger_energy_p(halves, 1) == doctest::Approx(4.0));
  auto path = load("path2.json");
  Partition p({Subgraph::maximally_glued(path, {{0, 0.0, 1.0 / 3}}), Subgraph::maximally_glued(path, {{1, 0.75, 1.0}})});
  CHECK(cheeger_energy_p(p, 2) == doctest::Approx(5.0));
  CHECK_THROWS_AS(cheeger_energy_p(p, 0.5), InvalidInput);
}

TEST_CASE("class linear programs") {
  auto i = load("interval.json");
  auto two = ConfigurationClass::coarsest(i, 2, {{1, 2}});
  auto opt = class_optimum(two);
  CHECK(opt.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(opt.lengths[0][0] == doctest::Approx(0.5));

  auto g = load("fig1.json");
  CHECK(class_optimum(fig4_left(g)).value == doctest::Approx(1.0).epsilon(1e-12));

  // c = (1, 2): L1 = 1/3, L2 = 2/3
  auto gap = ConfigurationClass::coarsest(i, 2, {{1, 2, 0}});
  CHECK(gap.boundary_sizes(BoundaryMode::EffectiveDegree) == std::vector<int>{1, 2});
  auto lp = class_optimum(gap);
  CHECK(lp.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lp.lengths[0][0] == doctest::Approx(1.0 / 3));
  CHECK(lp.lengths[0][1] == doctest::Approx(2.0 / 3));
  CHECK(grid_minimum(gap, 96) >= lp.value - 1e-12);
  CHECK(grid_minimum(gap, 96) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("grid search never beats the class optimum") {
  for (auto [name, k] : std::vector<std::pair<std::string, int>>{{"path2.json", 2}, {"star3.json", 2}, {"lasso.json", 2},
                                                                  {"path2.json", 3}}) {
    auto g = load(name);
    std::size_t n = 0;
    enumerate_reduced_classes(g, k, {1}, {}, [&](const ConfigurationClass& c) {
      double lp = class_optimum(c).value;
      double grid = grid_minimum(c, 64);
      CHECK(grid >= lp - 1e-9);
      ++n;
      return true;
    });
    CHECK(n > 0);
  }
}

TEST_CASE("cheeger constants of the worked examples") {
  auto g = load("fig1.json");
  auto res = cheeger_constant(g, 3);
  CHECK(std::abs(res.value - 1.0) < 1e-9);
  CHECK(res.argminClass == fig4_left(g).canonical().id());
  CHECK(boundary_size(res.argmin->part(2)) == 2);
  CHECK(res.capStable);

  auto chain = load("fig7.json");
  CHECK(std::abs(cheeger_constant(chain, 2).value - 1.0) < 1e-9);
  CheegerOptions count;
  count.mode = BoundaryMode::Count;
  CHECK(std::abs(cheeger_constant(chain, 2, count).value - 0.25) < 1e-9);

  auto i = load("interval.json");
  CheegerOptions ex;
  ex.exhaustive = true;
  CHECK(cheeger_constant(i, 2, ex).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cheeger_constant(i, 1).value == 0.0);
}

TEST_CASE("cheeger constant properties") {
  for (std::string name : {"fig1.json", "fig7.json", "star3.json", "lasso.json", "path2.json"}) {
    auto g = load(name);
    for (int k : {2, 3}) {
      auto eff = cheeger_constant(g, k);
      for (std::size_t c = 1; c < eff.valueByCap.size(); ++c) CHECK(eff.valueByCap[c] <= eff.valueByCap[c - 1]);
      CheegerOptions count;
      count.mode = BoundaryMode::Count;
      CHECK(cheeger_constant(g, k, count).value <= eff.value + 1e-12);
      CHECK(eff.value > 0);
      CHECK(cheeger_energy(*eff.argmin) <= eff.value * (1 + 1e-9));
      auto scaled = share(g->scaled(2.5));
      CHECK(cheeger_constant(scaled, k).value == doctest::Approx(eff.value / 2.5).epsilon(1e-10));
    }
  }
}

TEST_CASE("parallel and serial runs agree") {
  auto g = load("fig1.json");
  CheegerOptions serial, par;
  par.jobs = 4;
  auto a = cheeger_constant(g, 3, serial), b = cheeger_constant(g, 3, par);
  CHECK(a.value == b.value);
  CHECK(a.argminClass == b.argminClass);
  REQUIRE(a.perClass.size() == b.perClass.size());
  for (std::size_t i = 0; i < a.perClass.size(); ++i) CHECK(a.perClass[i].value == b.perClass[i].value);
}

TEST_CASE("p-norm cheeger optimum") {
  auto i = load("interval.json");
  CheegerOptions opts;
  opts.exhaustive = true;
  opts.p = 2.0;
  auto res = cheeger_constant(i, 2, opts);
  // symmetric halves
  CHECK(res.value == doctest::Approx(std::sqrt(8.0)).epsilon(1e-8));
  auto g = load("fig1.json");
  opts.exhaustive = false;
  opts.p = 64.0;
  auto big = cheeger_constant(g, 3, opts);
  CHECK(big.value >= 1.0 - 1e-9);
  CHECK(big.value <= std::pow(3.0, 1.0 / 64) + 1e-9);
  auto c = ConfigurationClass::coarsest(i, 2, {{1, 2, 0}});
  // p = 1: minimize 1/L1 + 2/L2 with L1 + L2 = 1 -> L1 = 1/(1 + sqrt 2)
  auto o = class_optimum_p(c, 1.0);
  CHECK(o.value == doctest::Approx(std::pow(1 + std::sqrt(2.0), 2)).epsilon(1e-8));
}

TEST_CASE("h1") {
  auto g = load("fig1.json");
  Subgraph mid = Subgraph::maximally_glued(g, {{g->edge_index("e1"), 0.25, 0.75}});
  auto r = h1(mid);
  CHECK(r.value == doctest::Approx(4.0));
  CHECK(r.calibrable);
  CHECK(h1(Subgraph::whole(g)).value == 0.0);
  auto pumpkin = h1(fixtures::fig1_pumpkin(g));
  CHECK(pumpkin.value == doctest::Approx(1.0));
  CHECK(pumpkin.calibrable);
  auto lollipop = h1(Subgraph::maximally_glued(g, {whole_edge(*g, "e1"), whole_edge(*g, "p1")}));
  CHECK(lollipop.value == doctest::Approx(1.0));
  CHECK_FALSE(lollipop.calibrable);
  CHECK(total_length(*lollipop.argmin) == doctest::Approx(1.0));
}

TEST_CASE("variant equals the cheeger constant") {
  for (auto [name, k] : std::vector<std::pair<std::string, int>>{{"fig1.json", 3}, {"interval.json", 2}, {"fig7.json", 2},
                                                                  {"star3.json", 2}, {"lasso.json", 2}}) {
    auto g = load(name);
    double c = cheeger_constant(g, k).value;
    CHECK(cheeger_variant(g, k).value == doctest::Approx(c).epsilon(1e-9));
  }
}

#include "fixtures.hpp"
#include "mgp/secular.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mgp;
using fixtures::load;
using fixtures::whole_edge;
using std::numbers::pi;

namespace {

// symmetric Robin ground state on [0, L]: k tan(k L / 2) = alpha
double symmetric_robin_oracle(double L, double alpha) {
  double lo = 0.0, hi = pi / L;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid * std::tan(mid * L / 2) < alpha ? lo : hi) = mid;
  }
  return lo * lo;
}

QuantumGraph star(int legs, double len, QuantumVertex leaf) {
  QuantumGraph q;
  q.vertices.push_back({});
  for (int i = 0; i < legs; ++i) {
    q.vertices.push_back(leaf);
    q.edges.push_back({0, i + 1, len});
  }
  return q;
}

}  // namespace

TEST_CASE("robin interval against the transcendental equation") {
  for (double L : {0.5, 1.0, 3.0})
    for (double alpha : {1e-3, 0.5, 1.0, 10.0, 1e4}) {
      auto q = interval_graph(L, {alpha}, {alpha});
      double expect = symmetric_robin_oracle(L, alpha);
      CHECK(ground_state(q).lambda1 == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("robin on an interior segment") {
  auto g = load("fig1.json");
  Subgraph mid = Subgraph::maximally_glued(g, {{g->edge_index("e1"), 0.25, 0.75}});
  for (double alpha : {0.1, 1.0, 7.0}) {
    double lam = robin_lambda1({mid, alpha}).lambda1;
    CHECK(lam == doctest::Approx(symmetric_robin_oracle(0.5, alpha)).epsilon(1e-10));
  }
  CHECK(dirichlet_lambda1(mid).lambda1 == doctest::Approx(4 * pi * pi).epsilon(1e-10));
}

TEST_CASE("neumann ground state is zero") {
  auto g = load("fig1.json");
  auto res = robin_lambda1({Subgraph::whole(g), 1.0});
  CHECK(res.lambda1 == 0.0);
  auto q = robin_graph(fixtures::fig1_pumpkin(g), 0.0);
  CHECK(ground_state(q).lambda1 == 0.0);
}

TEST_CASE("dirichlet references") {
  CHECK(ground_state(interval_graph(1.0, {0, true}, {0, true})).lambda1 == doctest::Approx(pi * pi).epsilon(1e-11));
  CHECK(ground_state(interval_graph(2.0, {0, true}, {0, false})).lambda1 ==
        doctest::Approx(pi * pi / 16).epsilon(1e-11));
  // Dirichlet leaves, Kirchhoff centre
  CHECK(ground_state(star(3, 1.0, {0, true})).lambda1 == doctest::Approx(pi * pi / 4).epsilon(1e-11));
  CHECK(ground_state(star(5, 1.0, {0, true})).lambda1 == doctest::Approx(pi * pi / 4).epsilon(1e-11));
}

TEST_CASE("dirichlet on subgraphs") {
  auto g = load("path2.json");
  // only the cut point at m is Dirichlet; the leaf stays Neumann
  Subgraph left = Subgraph::maximally_glued(g, {whole_edge(*g, "e1")});
  CHECK(dirichlet_lambda1(left).lambda1 == doctest::Approx(pi * pi / 4).epsilon(1e-11));
  auto i = load("interval.json");
  Subgraph half = Subgraph::maximally_glued(i, {{0, 0.0, 0.5}});
  CHECK(dirichlet_lambda1(half).lambda1 == doctest::Approx(pi * pi).epsilon(1e-11));
  CHECK(dirichlet_lambda1(Subgraph::whole(i)).lambda1 == 0.0);
}

TEST_CASE("large alpha approaches dirichlet from below") {
  auto g = load("fig1.json");
  Subgraph pumpkin = fixtures::fig1_pumpkin(g);
  double dir = dirichlet_lambda1(pumpkin).lambda1;
  double prev = 0.0;
  for (double alpha : {1e2, 1e4, 1e6}) {
    double lam = robin_lambda1({pumpkin, alpha}).lambda1;
    CHECK(lam < dir);
    CHECK(lam > prev);
    prev = lam;
  }
  CHECK((dir - prev) / dir < 1e-4);
}

TEST_CASE("secular and mesh agree") {
  auto g = load("fig1.json");
  std::vector<Subgraph> cases{fixtures::fig1_pumpkin(g),
                              Subgraph::maximally_glued(g, {whole_edge(*g, "e1"), whole_edge(*g, "p1")}),
                              Subgraph::maximally_glued(g, {{g->edge_index("e2"), 0.1, 1.0}, whole_edge(*g, "p3")})};
  auto lasso = load("lasso.json");
  cases.push_back(Subgraph::maximally_glued(lasso, {{0, 0.25, 0.75}, whole_edge(*lasso, "loop")}));
  for (const auto& omega : cases)
    for (double alpha : {0.3, 5.0}) {
      double s = robin_lambda1({omega, alpha}, Method::Secular).lambda1;
      auto m = robin_lambda1({omega, alpha}, Method::Mesh);
      CHECK(m.lambda1 == doctest::Approx(s).epsilon(1e-6));
      CHECK(std::abs(m.lambda1 - s) <= 10 * m.errorEstimate + 1e-9);
    }
}

TEST_CASE("eigenvalue is invariant under edge reversal and scales with length") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> len(0.2, 2.0), str(0.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    QuantumGraph q;
    for (int v = 0; v < 4; ++v) q.vertices.push_back({str(rng)});
    q.edges = {{0, 1, len(rng)}, {1, 2, len(rng)}, {2, 3, len(rng)}, {1, 3, len(rng)}, {2, 2, len(rng)}};
    double base = ground_state(q).lambda1;
    QuantumGraph flipped = q;
    for (auto& e : flipped.edges) std::swap(e.from, e.to);
    CHECK(ground_state(flipped).lambda1 == doctest::Approx(base).epsilon(1e-9));
    const double c = 1.7;
    QuantumGraph scaled = q;
    for (auto& e : scaled.edges) e.length *= c;
    for (auto& v : scaled.vertices) v.strength /= c;
    CHECK(ground_state(scaled).lambda1 * c * c == doctest::Approx(base).epsilon(1e-9));
    CHECK(eigenvalue_count_below(q, base * (1 - 1e-7)) == 0);
    CHECK(eigenvalue_count_below(q, base * (1 + 1e-7) + 1e-12) >= 1);
  }
}

TEST_CASE("eigenfunction samples satisfy the equation") {
  auto q = interval_graph(1.0, {2.0}, {2.0});
  SolverOptions opts;
  opts.eigenfunction = true;
  auto res = ground_state(q, opts);
  REQUIRE(res.eigenfunctionSamples.size() >= 3);
  double k = std::sqrt(res.lambda1);
  double ref = res.eigenfunctionSamples[res.eigenfunctionSamples.size() / 2].value;
  for (const auto& s : res.eigenfunctionSamples)
    CHECK(s.value == doctest::Approx(ref * std::cos(k * (s.offset - 0.5))).epsilon(1e-8));
}

TEST_CASE("robin lower bound") {
  auto g = load("fig1.json");
  std::vector<Subgraph> cases{fixtures::fig1_pumpkin(g), Subgraph::maximally_glued(g, {whole_edge(*g, "e1")}),
                              Subgraph::maximally_glued(g, {{g->edge_index("p2"), 0.1, 0.4}})};
  for (const auto& omega : cases)
    for (double alpha : {1e-2, 1.0, 1e2}) CHECK(robin_lambda1({omega, alpha}).lambda1 >= robin_lower_bound(omega, alpha));
  CHECK_THROWS_AS(robin_lower_bound(Subgraph::whole(g), 1.0), InvalidInput);
}

TEST_CASE("comparison with the robin-neumann interval") {
  CHECK(robin_neumann_interval(0.5, 1.0) == doctest::Approx(symmetric_robin_oracle(1.0, 1.0)).epsilon(1e-11));
  auto g = load("fig1.json");
  for (double alpha : {0.1, 1.0, 10.0}) {
    auto [lhs, rhs] = nicaise_comparison(fixtures::fig1_pumpkin(g), alpha);
    CHECK(lhs >= rhs * (1 - 1e-12));
    // a single interval attains it
    auto path = load("path2.json");
    auto [a, b] = nicaise_comparison(Subgraph::maximally_glued(path, {whole_edge(*path, "e1")}), alpha);
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("alpha profile") {
  auto g = load("fig1.json");
  Subgraph pumpkin = fixtures::fig1_pumpkin(g);
  auto prof = alpha_profile(pumpkin, {0.0, 0.01, 0.1, 1.0, 10.0, 100.0});
  CHECK(prof.front().second == 0.0);
  for (std::size_t i = 1; i < prof.size(); ++i) {
    CHECK(prof[i].second > prof[i - 1].second);
    // lambda / alpha is nonincreasing
    if (i > 1) CHECK(prof[i].second / prof[i].first <= prof[i - 1].second / prof[i - 1].first);
  }
  CHECK(prof[1].second == doctest::Approx(0.01 * boundary_size(pumpkin) / total_length(pumpkin)).epsilon(1e-2));
  CHECK_THROWS_AS(alpha_profile(pumpkin, {1.0, 0.5}), InvalidInput);
}

TEST_CASE("contracting an edge adds the strengths") {
  GlueFamily fam;
  fam.base.vertices = {{0.0}, {0.0}, {0.0}, {0.0}};
  fam.base.edges = {{0, 1, 1.0}, {1, 2, 0.5}, {2, 3, 0.8}, {2, 2, 1.1}};
  fam.edge = 1;
  fam.beta = 0.7;
  fam.gamma = 1.3;
  auto rows = glue_limit_check(fam, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 0.0});
  double limit = rows.back().second;
  double prevErr = INFINITY;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    double err = std::abs(rows[i].second - limit);
    CHECK(err < prevErr);
    prevErr = err;
  }
  CHECK(prevErr < 1e-4 * limit);
}

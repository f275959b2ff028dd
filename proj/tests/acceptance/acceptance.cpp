// Acceptance run: one PASS/FAIL line per criterion.

#include "mgp/checks.hpp"
#include "mgp/io.hpp"
#include "mgp/robin_opt.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

using namespace mgp;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

GraphPtr load(const std::string& name) { return share(parse_graph_file(std::string(MGP_DATA_DIR) + "/" + name)); }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string num(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Segment whole_edge(const MetricGraph& g, const std::string& id) {
  EdgeIndex e = g.edge_index(id);
  return {e, 0.0, g.edge(e).length};
}

// k tan(k L / 2) = alpha by bisection on (0, pi / L)
double symmetric_robin_oracle(double L, double alpha) {
  double lo = 0.0, hi = pi / L;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid * std::tan(mid * L / 2) < alpha ? lo : hi) = mid;
  }
  return lo * lo;
}

Verdict fig1_cheeger() {
  auto g = load("fig1.json");
  auto t0 = Clock::now();
  auto r = cheeger_constant(g, 3);
  double secs = seconds_since(t0);
  auto expected = ConfigurationClass::coarsest(g, 3, {{1}, {2}, {3}, {3}, {3}, {3}}).canonical().id();
  int pumpkinBoundary = -1;
  for (const auto& part : r.argmin->parts())
    if (std::abs(total_length(part) - 2.0) < 1e-9) pumpkinBoundary = boundary_size(part);
  bool ok = std::abs(r.value - 1.0) <= 1e-9 && r.argminClass == expected && pumpkinBoundary == 2 && secs < 5.0;
  return {ok, "C_3 = " + format_double(r.value) + ", class " + r.argminClass + (r.argminClass == expected ? "" : " (expected " + expected + ")") +
                  ", pumpkin boundary " + std::to_string(pumpkinBoundary) + ", " + num(secs, 3) + " s"};
}

Verdict fig7_cheeger() {
  auto g = load("fig7.json");
  double eff = cheeger_constant(g, 2).value;
  CheegerOptions count;
  count.mode = BoundaryMode::Count;
  double cnt = cheeger_constant(g, 2, count).value;
  bool ok = std::abs(eff - 1.0) <= 1e-9 && std::abs(cnt - 0.25) <= 1e-9;
  return {ok, "effective degree " + format_double(eff) + ", count " + format_double(cnt)};
}

Verdict interval_oracles() {
  double worstSecular = 0.0, worstMesh = 0.0, worstDirichlet = 0.0;
  for (double L : {0.5, 1.0, 2.0}) {
    // an interior segment of a longer edge: both ends are boundary points of effective degree 1
    MetricGraph raw({"a", "b"}, {{"e", "a", "b", L + 2.0}});
    auto g = share(raw);
    Subgraph omega = Subgraph::maximally_glued(g, {{0, 1.0, 1.0 + L}});
    for (double alpha : {0.1, 1.0, 10.0}) {
      double ref = symmetric_robin_oracle(L, alpha);
      RobinProblem p{omega, alpha, BoundaryMode::EffectiveDegree, {}};
      worstSecular = std::max(worstSecular, std::abs(robin_lambda1(p, Method::Secular, 1e-13).lambda1 - ref) / ref);
      worstMesh = std::max(worstMesh, std::abs(robin_lambda1(p, Method::Mesh).lambda1 - ref) / ref);
    }
    double d = std::pow(pi / L, 2);
    worstDirichlet = std::max(worstDirichlet, std::abs(dirichlet_lambda1(omega, Method::Secular, 1e-13).lambda1 - d) / d);
  }
  bool ok = worstSecular <= 1e-8 && worstMesh <= 1e-4 && worstDirichlet <= 1e-8;
  return {ok, "max relative error: secular " + num(worstSecular, 3) + ", mesh " + num(worstMesh, 3) + ", dirichlet " +
                  num(worstDirichlet, 3)};
}

Verdict pumpkin_expansion() {
  auto g = load("fig1.json");
  Subgraph pumpkin = Subgraph::maximally_glued(
      g, {whole_edge(*g, "p1"), whole_edge(*g, "p2"), whole_edge(*g, "p3"), whole_edge(*g, "p4")});
  double ratio = static_cast<double>(boundary_size(pumpkin)) / total_length(pumpkin);
  std::vector<double> res;
  for (double alpha : {1e-3, 5e-4, 2.5e-4}) {
    RobinProblem p{pumpkin, alpha, BoundaryMode::EffectiveDegree, {}};
    res.push_back(std::abs(robin_lambda1(p, Method::Secular, 1e-16).lambda1 / alpha - 1.0));
  }
  double f1 = res[0] / res[1], f2 = res[1] / res[2];
  bool ok = ratio == 1.0 && res[0] < 1e-2 && f1 >= 1.8 && f2 >= 1.8;
  return {ok, "|dOmega|/|Omega| = " + num(ratio) + ", residual " + num(res[0], 4) + " at 1e-3, halving factors " +
                  num(f1, 4) + ", " + num(f2, 4)};
}

Verdict property_suites() {
  std::vector<NamedGraph> corpus;
  for (std::string name : {"fig1", "fig7", "star3", "lasso", "path2"}) corpus.push_back({name, load(name + ".json")});
  auto report = run_property_suites(corpus);
  std::string detail;
  for (const auto& s : report.suites) {
    if (!detail.empty()) detail += "; ";
    detail += s.name + " " + std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases);
    for (const auto& m : s.messages) std::printf("    %s: %s\n", s.name.c_str(), m.c_str());
  }
  bool ok = report.ok() && report.seconds < 60 && report.sampledSubgraphs == 20;
  return {ok, std::to_string(report.sampledSubgraphs) + " subgraphs, " + num(report.seconds, 3) + " s: " + detail};
}

Verdict zero_study() {
  auto g = load("fig1.json");
  auto t0 = Clock::now();
  auto s = limit_study(g, 3, LimitDirection::ToZero, {1e-1, 1e-2, 1e-3, 1e-4});
  double secs = seconds_since(t0);
  // rows ascend in alpha
  auto row = [&](double a) -> const LimitRow& {
    for (const auto& r : s.rows)
      if (std::abs(r.alpha - a) < 1e-12 * a) return r;
    throw std::logic_error("grid point missing");
  };
  const LimitRow &r3 = row(1e-3), &r4 = row(1e-4);
  bool ratios = std::abs(r3.valueOverAlpha / s.referenceValue - 1) <= 0.02 &&
                std::abs(r4.valueOverAlpha / s.referenceValue - 1) <= 0.005;
  bool classes = r3.matchesReference && r4.matchesReference;
  // tail: the rows, from small alpha upwards, that sit in the reference class
  std::size_t tail = 0;
  while (tail < s.rows.size() && std::isfinite(s.rows[tail].distance)) ++tail;
  bool decreasing = tail >= 2;
  for (std::size_t i = 1; i < tail; ++i) decreasing = decreasing && s.rows[i - 1].distance < s.rows[i].distance;
  std::string dist;
  for (const auto& r : s.rows) dist += (dist.empty() ? "" : ", ") + num(r.distance, 3);
  bool ok = std::abs(s.referenceValue - 1.0) < 1e-9 && ratios && classes && decreasing && secs < 600;
  return {ok, "Lambda/alpha " + num(r3.valueOverAlpha, 8) + " at 1e-3, " + num(r4.valueOverAlpha, 8) +
                  " at 1e-4; class match " + (classes ? "yes" : "no") + "; distances (ascending alpha) " + dist + "; " +
                  num(secs, 3) + " s"};
}

Verdict infinity_studies() {
  struct Case {
    std::string file;
    double literal;
  };
  bool monotone = true, nearComputed = true, nearLiteral = true;
  std::string detail;
  for (const Case& c : {Case{"interval.json", 4 * pi * pi}, Case{"path2.json", pi * pi}}) {
    auto s = limit_study(load(c.file), 2, LimitDirection::ToInfinity, {1, 10, 100, 1e4});
    for (std::size_t i = 1; i < s.rows.size(); ++i) monotone = monotone && s.rows[i].value > s.rows[i - 1].value;
    double top = s.rows.back().value;
    double gap = (s.referenceValue - top) / s.referenceValue;
    double literalGap = std::abs(c.literal - top) / c.literal;
    nearComputed = nearComputed && gap >= 0 && gap < 0.01;
    nearLiteral = nearLiteral && literalGap < 0.01;
    detail += c.file + ": Lambda(1e4) " + num(top, 8) + ", computed Lambda^D " + num(s.referenceValue, 8) + " (gap " +
              num(100 * gap, 3) + "%), stated constant " + num(c.literal, 8) + " (gap " + num(100 * literalGap, 3) + "%); ";
  }
  detail += std::string("monotone ") + (monotone ? "yes" : "no");
  // the stated constants are what the criterion names, so they decide the verdict
  return {monotone && nearComputed && nearLiteral, detail};
}

Verdict lipschitz_structure() {
  SpectralOptions opts;
  opts.restarts = 2;
  const std::vector<double> grid{0.05, 0.2, 1.0, 5.0, 20.0};
  bool ok = true;
  std::string detail;
  for (std::string name : {"interval", "path2", "star3", "lasso", "fig1", "fig7"}) {
    auto t = alpha_monotonicity_check(load(name + ".json"), 2, grid, opts, 1e-10);
    double worstSlope = 0.0, minIncrease = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      worstSlope = std::max(worstSlope, t.rows[i].slope);
      minIncrease = std::min(minIncrease, t.rows[i].increase);
    }
    ok = ok && t.ok;
    detail += name + " max slope " + num(worstSlope, 4) + " <= C " + num(t.lipschitz, 4) + ", min increase " +
              num(minIncrease, 3) + (t.ok ? "" : " VIOLATED") + "; ";
    for (const auto& v : t.violations) std::printf("    %s: %s\n", name.c_str(), v.c_str());
  }
  return {ok, detail};
}

GraphPtr random_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = 4, extra = 2;
  std::vector<std::string> ids;
  for (int v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
  std::vector<MetricGraph::RawEdge> edges;
  auto length = [&] { return 0.25 * static_cast<double>(2 + rng() % 5); };
  for (int v = 1; v < n; ++v) edges.push_back({"t" + std::to_string(v), ids[rng() % v], ids[v], length()});
  for (int i = 0; i < extra; ++i) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    edges.push_back({"x" + std::to_string(i), ids[a], ids[b], length()});
  }
  return share(MetricGraph(ids, edges));
}

Verdict variant_equivalence() {
  struct Case {
    std::string name;
    GraphPtr g;
    int k;
  };
  std::vector<Case> cases{{"fig1", load("fig1.json"), 3}, {"fig7", load("fig7.json"), 2}};
  for (std::uint64_t s : {11u, 12u, 13u}) cases.push_back({"random" + std::to_string(s), random_graph(s), 2});
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    double constant = cheeger_constant(c.g, c.k).value;
    double variant = cheeger_variant(c.g, c.k).value;
    double diff = std::abs(constant - variant);
    ok = ok && diff <= 1e-9;
    detail += c.name + " " + num(constant, 10) + " vs " + num(variant, 10) + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, fig1_cheeger},      {2, fig7_cheeger},     {3, interval_oracles},
      {4, pumpkin_expansion}, {5, property_suites},  {6, zero_study},
      {7, infinity_studies},  {8, lipschitz_structure}, {9, variant_equivalence}};
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

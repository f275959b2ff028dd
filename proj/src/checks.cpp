#include "mgp/checks.hpp"

#include "mgp/enumerate.hpp"
#include "mgp/io.hpp"
#include "mgp/parallel.hpp"
#include "mgp/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace mgp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kSolverTol = 1e-12;
constexpr std::size_t kMaxMessages = 12;

class Suite {
public:
  explicit Suite(std::string name) : start_(Clock::now()) {
    r_.name = std::move(name);
    r_.worstMargin = std::numeric_limits<double>::infinity();
  }

  /// margin < 0 is a violation.
  void record(double margin, const std::string& what) {
    ++r_.cases;
    r_.worstMargin = std::min(r_.worstMargin, margin);
    if (margin < 0 || std::isnan(margin)) {
      ++r_.failures;
      if (r_.messages.size() < kMaxMessages) r_.messages.push_back(what + " (margin " + format_double(margin) + ")");
    }
  }

  SuiteResult finish() {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (r_.cases == 0) r_.worstMargin = 0.0;
    return std::move(r_);
  }

private:
  SuiteResult r_;
  Clock::time_point start_;
};

std::string describe(const std::string& graph, std::size_t sample) {
  return graph + "#" + std::to_string(sample);
}

double lambda_of(const QuantumGraph& q) {
  SolverOptions o;
  o.tol = kSolverTol;
  return ground_state(q, o).lambda1;
}

struct Sample {
  std::string graph;
  std::size_t index;
  Subgraph omega;
};

struct ProfileRows {
  std::vector<std::pair<double, double>> profile;
  double ratio = 0.0;
};

void profile_suites(const std::vector<Sample>& samples, const CheckOptions& opts, std::vector<SuiteResult>& out) {
  Suite mono("alpha monotonicity"), concave("alpha concavity"), deriv("derivative bound");
  std::vector<ProfileRows> rows(samples.size());
  parallel_for(samples.size(), opts.jobs, [&](std::size_t i) {
    rows[i].profile = alpha_profile(samples[i].omega, opts.alphaGrid);
    rows[i].ratio = boundary_size(samples[i].omega) / total_length(samples[i].omega);
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = rows[i].profile;
    const std::string who = describe(samples[i].graph, samples[i].index);
    std::vector<double> slopes;
    for (std::size_t j = 1; j < p.size(); ++j) {
      double h = p[j].first - p[j - 1].first;
      double inc = p[j].second - p[j - 1].second;
      mono.record(inc - 1e-10, who + " alpha " + format_double(p[j - 1].first) + " -> " + format_double(p[j].first));
      slopes.push_back(inc / h);
      double tol = 4 * kSolverTol * std::max(1.0, p[j].second) / h + opts.slack * rows[i].ratio;
      deriv.record(rows[i].ratio + tol - inc / h, who + " slope at alpha " + format_double(p[j - 1].first));
    }
    for (std::size_t j = 1; j < slopes.size(); ++j) {
      double h = std::min(p[j].first - p[j - 1].first, p[j + 1].first - p[j].first);
      double tol = 8 * kSolverTol * std::max(1.0, p[j + 1].second) / h + opts.slack * std::abs(slopes[j - 1]);
      concave.record(slopes[j - 1] + tol - slopes[j], who + " second difference at alpha " + format_double(p[j].first));
    }
  }
  out.push_back(mono.finish());
  out.push_back(concave.finish());
  out.push_back(deriv.finish());
}

void bound_suites(const std::vector<Sample>& samples, const CheckOptions& opts, std::vector<SuiteResult>& out) {
  Suite lower("lower bound"), nicaise("nicaise comparison"), shorten("edge shortening");
  const std::vector<double> alphas{0.1, 1.0, 10.0};
  struct Row {
    std::vector<double> lambda, bound, lhs, rhs;
    std::vector<std::pair<double, double>> shortened;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), opts.jobs, [&](std::size_t i) {
    const Subgraph& omega = samples[i].omega;
    for (double a : alphas) {
      RobinProblem prob{omega, a, BoundaryMode::EffectiveDegree, {}};
      rows[i].lambda.push_back(robin_lambda1(prob, Method::Secular, kSolverTol).lambda1);
      rows[i].bound.push_back(robin_lower_bound(omega, a));
      auto [l, r] = nicaise_comparison(omega, a);
      rows[i].lhs.push_back(l);
      rows[i].rhs.push_back(r);
    }
    QuantumGraph q = robin_graph(omega, 1.0);
    double base = lambda_of(q);
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
      QuantumGraph s = q;
      s.edges[e].length *= 0.5;
      rows[i].shortened.push_back({base, lambda_of(s)});
    }
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string who = describe(samples[i].graph, samples[i].index);
    const Row& r = rows[i];
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      const std::string at = who + " alpha " + format_double(alphas[j]);
      lower.record(r.lambda[j] * (1 + opts.slack) + kSolverTol - r.bound[j], at);
      nicaise.record(r.lhs[j] * (1 + opts.slack) + kSolverTol - r.rhs[j], at);
      // forcing every effective degree to 1 can only lower the eigenvalue
      nicaise.record(r.lambda[j] * (1 + opts.slack) + kSolverTol - r.lhs[j], at + " (unit degrees)");
    }
    for (std::size_t e = 0; e < r.shortened.size(); ++e) {
      auto [before, after] = r.shortened[e];
      shorten.record(after - before * (1 - opts.slack) + kSolverTol, who + " edge " + std::to_string(e));
    }
  }
  out.push_back(lower.finish());
  out.push_back(nicaise.finish());
  out.push_back(shorten.finish());
}

struct Family {
  std::string name;
  GlueFamily family;
  /// Independent value at t = 0 (NaN when none).
  double oracle = std::numeric_limits<double>::quiet_NaN();
};

std::vector<Family> glue_families() {
  std::vector<Family> fams;
  {
    // path of length 1 + t, Robin 1 at both far ends
    Family f{"robin path", {}};
    f.family.base.vertices = {{1.0}, {0.0}, {1.0}};
    f.family.base.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    f.family.edge = 1;
    f.family.beta = 0.0;
    f.family.gamma = 1.0;
    f.oracle = robin_neumann_interval(0.5, 1.0);
    fams.push_back(f);
  }
  {
    // pumpkin with a pendant to a dummy leaf
    Family f{"pumpkin with pendant", {}};
    f.family.base.vertices = {{0.5}, {0.0}, {0.0}};
    f.family.base.edges = {{0, 1, 0.5}, {0, 1, 0.5}, {0, 1, 0.5}, {1, 2, 1.0}};
    f.family.edge = 3;
    f.family.beta = 1.0;
    f.family.gamma = 0.0;
    fams.push_back(f);
  }
  {
    Family f{"lasso chain", {}};
    f.family.base.vertices = {{0.0}, {0.0}, {0.0}, {0.0}};
    f.family.base.edges = {{0, 1, 1.0}, {1, 2, 0.5}, {2, 3, 0.8}, {2, 2, 1.1}};
    f.family.edge = 1;
    f.family.beta = 0.7;
    f.family.gamma = 1.3;
    fams.push_back(f);
  }
  return fams;
}

void glue_suites(const CheckOptions& opts, std::vector<SuiteResult>& out) {
  Suite shorten("family shortening"), limit("glue limit");
  const std::vector<double> tGrid{0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 1e-3, 1e-4, 1e-5, 1e-6, 0.0};
  auto fams = glue_families();
  std::vector<std::vector<std::pair<double, double>>> rows(fams.size());
  parallel_for(fams.size(), opts.jobs, [&](std::size_t i) { rows[i] = glue_limit_check(fams[i].family, tGrid, kSolverTol); });
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const auto& r = rows[i];
    const double at0 = r.back().second;
    double prevErr = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      const std::string at = fams[i].name + " t " + format_double(r[j].first);
      if (j > 0) shorten.record(r[j].second - r[j - 1].second * (1 - opts.slack) + kSolverTol, at);
      // approaching the glued graph from below
      limit.record(at0 - r[j].second + kSolverTol, at + " below the limit");
      double err = at0 - r[j].second;
      limit.record(prevErr - err + kSolverTol, at + " error shrinks");
      prevErr = err;
    }
    limit.record(1e-5 * at0 - prevErr, fams[i].name + " final gap");
    if (!std::isnan(fams[i].oracle))
      limit.record(1e-9 * fams[i].oracle - std::abs(at0 - fams[i].oracle), fams[i].name + " limit oracle");
  }
  out.push_back(shorten.finish());
  out.push_back(limit.finish());
}

void perimeter_suite(const std::vector<NamedGraph>& corpus, const std::vector<Sample>& samples,
                     const CheckOptions& opts, std::vector<SuiteResult>& out) {
  Suite s("perimeter");
  auto one = [&](const Subgraph& omega, const std::string& who) {
    s.record(1e-9 - std::abs(perimeter_oracle(omega) - perimeter(omega)), who);
  };
  for (const auto& smp : samples) one(smp.omega, describe(smp.graph, smp.index));
  // a wider draw: the linear programs are cheap
  for (std::size_t g = 0; g < corpus.size(); ++g) {
    auto extra = sample_subgraphs(corpus[g].graph, 10 * opts.samples, opts.seed + 1000 + g);
    for (std::size_t i = 0; i < extra.size(); ++i) one(extra[i], corpus[g].name + "+" + std::to_string(i));
  }
  out.push_back(s.finish());
}

constexpr const char* kFig1 = R"({"vertices": ["a", "b", "v", "w"], "edges": [
  {"id": "e1", "u": "a", "v": "v", "length": 1.0}, {"id": "e2", "u": "b", "v": "v", "length": 1.0},
  {"id": "p1", "u": "v", "v": "w", "length": 0.5}, {"id": "p2", "u": "v", "v": "w", "length": 0.5},
  {"id": "p3", "u": "v", "v": "w", "length": 0.5}, {"id": "p4", "u": "v", "v": "w", "length": 0.5}]})";

void lsc_suite(std::vector<SuiteResult>& out) {
  Suite s("lower semicontinuity");
  auto g = share(parse_graph_text(kFig1, "pendant pumpkin"));
  // part 2 takes the end of e1, all of e2 and a stub of every pumpkin edge at v
  auto cls = ConfigurationClass::coarsest(g, 3, {{1, 2}, {2}, {2, 3}, {2, 3}, {2, 3}, {2, 3}});
  for (int n : {4, 16, 256, 4096}) {
    double t = 1.0 / n;
    SegmentLengths len{{1 - t, t}, {1.0}, {t / 2, 0.5 - t / 2}, {t / 2, 0.5 - t / 2}, {t / 2, 0.5 - t / 2},
                       {t / 2, 0.5 - t / 2}};
    int b = boundary_size(realize(cls, len).part(1));
    s.record(b == 5 ? 0.0 : -std::abs(b - 5.0), "t = 1/" + std::to_string(n) + " boundary " + std::to_string(b));
  }
  SegmentLengths limit{{1.0, 0.0}, {1.0}, {0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}};
  Partition p = realize(cls, limit);
  int b = boundary_size(p.part(1));
  s.record(b == 1 ? 0.0 : -std::abs(b - 1.0), "limit boundary " + std::to_string(b));
  int pumpkin = boundary_size(p.part(2));
  s.record(pumpkin == 4 ? 0.0 : -std::abs(pumpkin - 4.0), "limit pumpkin boundary " + std::to_string(pumpkin));
  out.push_back(s.finish());
}

}  // namespace

bool CheckReport::ok() const {
  return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

std::vector<Subgraph> sample_subgraphs(const GraphPtr& graph, std::size_t count, std::uint64_t seed) {
  std::vector<ConfigurationClass> pool;
  enumerate_reduced_classes(graph, 2, {}, {}, [&](const ConfigurationClass& c) {
    pool.push_back(c);
    return true;
  });
  if (pool.empty()) return {};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> piece(0.1, 1.0);
  std::vector<Subgraph> out;
  for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries) {
    const auto& cls = pool[rng() % pool.size()];
    SegmentLengths len(cls.labels().size());
    for (std::size_t e = 0; e < len.size(); ++e) {
      double total = 0.0;
      for (std::size_t j = 0; j < cls.labels()[e].size(); ++j) total += len[e].emplace_back(piece(rng));
      for (double& x : len[e]) x *= graph->edge(static_cast<EdgeIndex>(e)).length / total;
    }
    Partition p = realize(cls, len);
    const Subgraph& omega = p.part(static_cast<int>(rng() % p.k()));
    if (omega.boundary().empty()) continue;
    try {
      perimeter(omega);
    } catch (const InvalidInput&) {
      continue;
    }
    out.push_back(omega);
  }
  return out;
}

CheckReport run_property_suites(const std::vector<NamedGraph>& corpus, const CheckOptions& opts) {
  const auto start = Clock::now();
  if (corpus.empty()) throw InvalidInput("property suites need at least one graph");
  CheckReport report;
  std::vector<Sample> samples;
  for (std::size_t g = 0; g < corpus.size(); ++g) {
    std::size_t quota = opts.samples / corpus.size() + (g < opts.samples % corpus.size() ? 1 : 0);
    auto drawn = sample_subgraphs(corpus[g].graph, quota, opts.seed + g);
    for (std::size_t i = 0; i < drawn.size(); ++i) samples.push_back({corpus[g].name, i, std::move(drawn[i])});
  }
  report.sampledSubgraphs = samples.size();
  profile_suites(samples, opts, report.suites);
  bound_suites(samples, opts, report.suites);
  glue_suites(opts, report.suites);
  perimeter_suite(corpus, samples, opts, report.suites);
  lsc_suite(report.suites);
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace mgp

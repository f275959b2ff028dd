#include "mgp/robin_opt.hpp"

#include "mgp/parallel.hpp"
#include "mgp/simplex.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace mgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void project_simplex(std::vector<double>& y, double total) {
  std::vector<double> u = y;
  std::sort(u.rbegin(), u.rend());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    double t = (cum - total) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  for (double& v : y) v = std::max(v - theta, 0.0);
}

struct Cut {
  std::size_t edge;
  std::size_t slot;  // between segments slot and slot + 1
};

class Objective {
public:
  Objective(const ConfigurationClass& cls, const SpectralTarget& target, Method method)
      : cls_(cls), target_(target), method_(method) {
    const auto& labels = cls.labels();
    for (std::size_t e = 0; e < labels.size(); ++e)
      for (std::size_t j = 0; j + 1 < labels[e].size(); ++j) cuts_.push_back({e, j});
  }

  const std::vector<Cut>& cuts() const { return cuts_; }
  const ConfigurationClass& cls() const { return cls_; }

  /// Eigenvalue per part; all +inf if some part vanishes. `only` restricts the solves.
  std::vector<double> lambdas(const SegmentLengths& x, int onlyA = -1, int onlyB = -1) const {
    std::vector<double> out(cls_.k(), kInf);
    std::optional<Partition> p;
    try {
      p.emplace(realize(cls_, x));
    } catch (const InvalidInput&) {
      return out;
    }
    for (int i = 0; i < cls_.k(); ++i) {
      if (onlyA >= 0 && i != onlyA && i != onlyB) continue;
      out[i] = part_lambda1(p->part(i), target_, method_);
    }
    return out;
  }

  double energy(const SegmentLengths& x) const {
    auto l = lambdas(x);
    return *std::max_element(l.begin(), l.end());
  }

  /// Moves one cut to minimize the larger of its two neighbours' eigenvalues.
  void equalize(SegmentLengths& x, const Cut& c) const {
    const auto& labels = cls_.labels()[c.edge];
    const int a = labels[c.slot], b = labels[c.slot + 1];
    auto& seg = x[c.edge];
    const double total = seg[c.slot] + seg[c.slot + 1];
    if (total <= 0.0) return;
    auto set = [&](double u) {
      seg[c.slot] = u;
      seg[c.slot + 1] = total - u;
    };
    // growing an unassigned piece never helps
    if (a == ConfigurationClass::Unassigned) return set(0.0);
    if (b == ConfigurationClass::Unassigned) return set(total);
    // h decreases in u: part a grows, part b shrinks
    auto h = [&](double u) {
      set(u);
      if (vanishes(x, a)) return kInf;
      if (vanishes(x, b)) return -kInf;
      auto l = lambdas(x, a - 1, b - 1);
      return l[a - 1] - l[b - 1];
    };
    double lo = 0.0, hi = total;
    double hlo = h(lo), hhi = h(hi);
    if (hlo <= 0.0) return set(lo);
    if (hhi >= 0.0) return set(hi);
    const double tol = 1e-15 * cls_.graph().edge(static_cast<EdgeIndex>(c.edge)).length;
    while ((std::isinf(hlo) || std::isinf(hhi)) && hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      double hm = h(mid);
      if (hm > 0) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
        hhi = hm;
      }
    }
    if (std::isfinite(hlo) && std::isfinite(hhi) && hi - lo > tol) {
      std::uintmax_t iters = 100;
      auto r = boost::math::tools::toms748_solve(
          h, lo, hi, hlo, hhi, [tol](double l, double r) { return r - l <= tol; }, iters);
      lo = r.first;
      hi = r.second;
    }
    // the side with the finite, smaller max
    set(lo);
    auto l1 = lambdas(x, a - 1, b - 1);
    set(hi);
    auto l2 = lambdas(x, a - 1, b - 1);
    if (std::max(l1[a - 1], l1[b - 1]) < std::max(l2[a - 1], l2[b - 1])) set(lo);
  }

private:
  bool vanishes(const SegmentLengths& x, int label) const {
    const auto& labels = cls_.labels();
    for (std::size_t e = 0; e < labels.size(); ++e)
      for (std::size_t j = 0; j < labels[e].size(); ++j)
        if (labels[e][j] == label && x[e][j] > 1e-12 * cls_.graph().edge(static_cast<EdgeIndex>(e)).length)
          return false;
    return true;
  }

  const ConfigurationClass& cls_;
  SpectralTarget target_;
  Method method_;
  std::vector<Cut> cuts_;
};

double max_move(const SegmentLengths& a, const SegmentLengths& b) {
  double m = 0.0;
  for (std::size_t e = 0; e < a.size(); ++e) {
    double pa = 0.0, pb = 0.0;
    for (std::size_t j = 0; j + 1 < a[e].size(); ++j) {
      pa += a[e][j];
      pb += b[e][j];
      m = std::max(m, std::abs(pa - pb));
    }
  }
  return m;
}

// Nelder-Mead over the segment lengths of edges with cuts, projected onto the per-edge simplices.
int nelder_mead(const Objective& obj, SegmentLengths& x, double& fx, int maxIter, double relChange) {
  const MetricGraph& g = obj.cls().graph();
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t e = 0; e < x.size(); ++e)
    if (x[e].size() > 1)
      for (std::size_t j = 0; j < x[e].size(); ++j) coords.push_back({e, j});
  const std::size_t n = coords.size();
  if (n == 0) return 0;
  auto unpack = [&](const std::vector<double>& v) {
    SegmentLengths y = x;
    for (std::size_t i = 0; i < n; ++i) y[coords[i].first][coords[i].second] = v[i];
    for (std::size_t e = 0; e < y.size(); ++e)
      if (y[e].size() > 1) project_simplex(y[e], g.edge(static_cast<EdgeIndex>(e)).length);
    return y;
  };
  auto pack = [&](const SegmentLengths& y) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[coords[i].first][coords[i].second];
    return v;
  };
  struct Vertex {
    std::vector<double> v;
    double f;
  };
  auto eval = [&](std::vector<double> v) {
    SegmentLengths y = unpack(v);
    return Vertex{pack(y), obj.energy(y)};
  };
  std::vector<Vertex> simplex{{pack(x), fx}};
  for (std::size_t i = 0; i < n; ++i) {
    auto v = simplex[0].v;
    double len = g.edge(static_cast<EdgeIndex>(coords[i].first)).length;
    v[i] += v[i] < 0.5 * len ? 0.02 * len : -0.02 * len;
    simplex.push_back(eval(v));
  }
  int iter = 0;
  for (; iter < maxIter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double best = simplex.front().f, worst = simplex.back().f;
    if (std::isfinite(worst) && worst - best <= relChange * std::abs(best)) break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].v[j] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = centroid[j] + t * (simplex.back().v[j] - centroid[j]);
      return eval(v);
    };
    Vertex r = along(-1.0);
    if (r.f < simplex.front().f) {
      Vertex e = along(-2.0);
      simplex.back() = e.f < r.f ? e : r;
    } else if (r.f < simplex[n - 1].f) {
      simplex.back() = r;
    } else {
      Vertex c = along(r.f < simplex.back().f ? -0.5 : 0.5);
      if (c.f < std::min(r.f, simplex.back().f)) {
        simplex.back() = c;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          std::vector<double> v(n);
          for (std::size_t j = 0; j < n; ++j) v[j] = 0.5 * (simplex[0].v[j] + simplex[i].v[j]);
          simplex[i] = eval(v);
        }
      }
    }
  }
  auto best = std::min_element(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  if (best->f < fx) {
    x = unpack(best->v);
    fx = best->f;
  }
  return iter;
}

struct StartRun {
  double value = kInf;
  SegmentLengths lengths;
  int iterations = 0;
  bool converged = false;
};

StartRun run_start(const Objective& obj, SegmentLengths x, const SpectralOptions& opts, bool polish) {
  StartRun out;
  const double lmax = obj.cls().graph().max_edge_length();
  double f = obj.energy(x);
  for (int round = 0; round < 3; ++round) {
    bool converged = false;
    for (int sweep = 0; sweep < opts.maxIterations; ++sweep) {
      SegmentLengths before = x;
      for (const auto& c : obj.cuts()) obj.equalize(x, c);
      double fNew = obj.energy(x);
      ++out.iterations;
      bool small = std::abs(f - fNew) <= opts.relChange * std::abs(fNew) &&
                   max_move(before, x) <= opts.positionTol * lmax;
      f = std::min(f, fNew);
      if (small || obj.cuts().empty()) {
        converged = true;
        break;
      }
      if (!polish) break;
    }
    out.converged = converged;
    if (!polish || obj.cuts().empty()) break;
    const double fBefore = f;
    out.iterations += nelder_mead(obj, x, f, opts.maxIterations, 1e-12);
    if (!(f < fBefore * (1 - opts.relChange))) break;
  }
  out.value = f;
  out.lengths = std::move(x);
  return out;
}

SegmentLengths primary_start(const ConfigurationClass& cls, const SpectralTarget& target) {
  if (!target.is_dirichlet() && *target.alpha <= 0.1) {
    ClassOptimum lp = class_optimum(cls, target.mode);
    if (std::isfinite(lp.value)) return lp.lengths;
  }
  return cls.nominal_lengths();
}

double spread_of(const std::vector<double>& l) {
  double mx = *std::max_element(l.begin(), l.end()), mn = *std::min_element(l.begin(), l.end());
  return mx > 0 && std::isfinite(mx) ? (mx - mn) / mx : 0.0;
}

}  // namespace

double part_lambda1(const Subgraph& part, const SpectralTarget& target, Method method) {
  if (target.is_dirichlet()) return dirichlet_lambda1(part, method).lambda1;
  return robin_lambda1(RobinProblem{part, *target.alpha, target.mode, {}}, method).lambda1;
}

double spectral_energy(const Partition& p, const SpectralTarget& target, Method method) {
  double m = 0.0;
  for (const auto& part : p.parts()) m = std::max(m, part_lambda1(part, target, method));
  return m;
}

double robin_energy(const Partition& p, double alpha, BoundaryMode mode) {
  if (alpha < 0) throw InvalidInput("alpha must be >= 0");
  return spectral_energy(p, SpectralTarget::robin(alpha, mode));
}

double robin_energy_p(const Partition& p, double alpha, double exponent, BoundaryMode mode) {
  if (alpha < 0) throw InvalidInput("alpha must be >= 0");
  if (!(exponent >= 1.0)) throw InvalidInput("p must be >= 1");
  std::vector<double> l;
  for (const auto& part : p.parts()) l.push_back(part_lambda1(part, SpectralTarget::robin(alpha, mode)));
  double m = *std::max_element(l.begin(), l.end());
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : l) s += std::pow(v / m, exponent);
  return m * std::pow(s, 1.0 / exponent);
}

double dirichlet_energy(const Partition& p) { return spectral_energy(p, SpectralTarget::dirichlet()); }

ClassMinimum minimize_class(const ConfigurationClass& cls, const SpectralTarget& target, const SpectralOptions& opts,
                            const std::vector<SegmentLengths>& extraStarts) {
  if (!target.is_dirichlet() && !(*target.alpha >= 0)) throw InvalidInput("alpha must be >= 0");
  if (opts.restarts < 1) throw InvalidInput("restarts must be >= 1");
  Objective obj(cls, target, opts.method);
  std::vector<SegmentLengths> starts{primary_start(cls, target)};
  for (const auto& s : extraStarts) starts.push_back(s);
  std::mt19937_64 rng(opts.seed ^ fnv1a(cls.id()));
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int r = 1; r < opts.restarts && !obj.cuts().empty(); ++r) {
    SegmentLengths x = cls.nominal_lengths();
    for (std::size_t e = 0; e < x.size(); ++e) {
      double len = cls.graph().edge(static_cast<EdgeIndex>(e)).length, sum = 0.0;
      for (double& v : x[e]) sum += (v = u(rng));
      for (double& v : x[e]) v *= len / sum;
    }
    starts.push_back(std::move(x));
  }
  ClassMinimum best;
  best.value = kInf;
  for (const auto& s : starts) {
    StartRun run = run_start(obj, s, opts, true);
    best.iterations += run.iterations;
    ++best.restarts;
    if (run.value < best.value) {
      best.value = run.value;
      best.lengths = std::move(run.lengths);
      best.converged = run.converged;
    }
  }
  if (std::isfinite(best.value)) best.spread = spread_of(obj.lambdas(best.lengths));
  return best;
}

SpectralPartitionResult spectral_minimal_partition(const GraphPtr& graph, int k, const SpectralTarget& target,
                                                   const SpectralOptions& opts) {
  if (k < 2) throw InvalidInput("spectral minimal partitions need k >= 2");
  if (!target.is_dirichlet() && !(*target.alpha > 0)) throw InvalidInput("alpha must be > 0");
  SpectralPartitionResult res;
  res.target = target;
  std::vector<ConfigurationClass> classes;
  ReducedEnumerationOptions ropts;
  ropts.exhaustive = opts.exhaustive;
  res.enumeration = enumerate_reduced_classes(graph, k, opts.caps, ropts, [&](const ConfigurationClass& c) {
    classes.push_back(c);
    return true;
  });
  res.warnings = res.enumeration.warnings;
  if (classes.empty()) throw SolverFailure("no admissible configuration class for k = " + std::to_string(k));

  std::vector<SpectralClassRow> rows(classes.size());
  parallel_for(classes.size(), opts.jobs, [&](std::size_t i) {
    Objective obj(classes[i], target, opts.method);
    StartRun run = run_start(obj, primary_start(classes[i], target), opts, false);
    rows[i].id = classes[i].id();
    rows[i].maxCuts = classes[i].max_cuts();
    rows[i].surrogate = run.value;
    rows[i].result.value = run.value;
    rows[i].result.lengths = std::move(run.lengths);
  });

  std::map<std::string, std::vector<SegmentLengths>> seeded;
  for (const auto& s : opts.seeds) seeded[s.classId].push_back(s.lengths);
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[a].surrogate != rows[b].surrogate) return rows[a].surrogate < rows[b].surrogate;
    return rows[a].id < rows[b].id;
  });
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < order.size(); ++r)
    if ((r < opts.shortlist && std::isfinite(rows[order[r]].surrogate)) || seeded.count(rows[order[r]].id))
      chosen.push_back(order[r]);
  if (chosen.size() < classes.size())
    res.warnings.push_back("optimized " + std::to_string(chosen.size()) + " of " + std::to_string(classes.size()) +
                           " classes after the surrogate pass");

  parallel_for(chosen.size(), opts.jobs, [&](std::size_t c) {
    std::size_t i = chosen[c];
    auto it = seeded.find(rows[i].id);
    std::vector<SegmentLengths> extra;
    if (it != seeded.end()) extra = it->second;
    extra.push_back(rows[i].result.lengths);
    ClassMinimum m = minimize_class(classes[i], target, opts, extra);
    rows[i].result = std::move(m);
    rows[i].minimized = true;
  });

  res.value = kInf;
  std::size_t bestRow = classes.size();
  for (std::size_t i : chosen) {
    const auto& r = rows[i].result;
    if (!std::isfinite(r.value)) continue;
    if (bestRow == classes.size() || r.value < res.value ||
        (r.value == res.value && rows[i].id < rows[bestRow].id)) {
      res.value = r.value;
      bestRow = i;
    }
  }
  if (bestRow == classes.size()) throw SolverFailure("no class admits a realization with positive parts");
  const auto& best = rows[bestRow];
  res.argmin.emplace(realize(classes[bestRow], best.result.lengths));
  res.argminRow = best.id;
  res.argminLengths = best.result.lengths;
  res.argminClass = class_of(*res.argmin).canonical().id();
  res.spread = best.result.spread;
  for (std::size_t i : chosen) {
    res.iterations += rows[i].result.iterations;
    res.restarts += rows[i].result.restarts;
  }
  if (!best.result.converged)
    res.warnings.push_back("optimizer stopped at the iteration cap; eigenvalue spread " +
                           std::to_string(best.result.spread));
  res.perClass = std::move(rows);
  return res;
}

SpectralPartitionResult robin_minimal_partition(const GraphPtr& graph, int k, double alpha,
                                                const SpectralOptions& opts, BoundaryMode mode) {
  return spectral_minimal_partition(graph, k, SpectralTarget::robin(alpha, mode), opts);
}

SpectralPartitionResult dirichlet_minimal_partition(const GraphPtr& graph, int k, const SpectralOptions& opts) {
  return spectral_minimal_partition(graph, k, SpectralTarget::dirichlet(), opts);
}

double lipschitz_constant(const MetricGraph& g, int k) {
  return 2.0 * k * g.degree_sum() / g.max_edge_length();
}

std::vector<SpectralPartitionResult> robin_alpha_sweep(const GraphPtr& graph, int k, const std::vector<double>& grid,
                                                       const SpectralOptions& opts, BoundaryMode mode) {
  for (double a : grid)
    if (!(a > 0)) throw InvalidInput("alpha grid entries must be > 0");
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] > grid[b]; });
  std::vector<std::optional<SpectralPartitionResult>> out(grid.size());
  SpectralOptions local = opts;
  for (std::size_t idx : order) {
    auto res = robin_minimal_partition(graph, k, grid[idx], local, mode);
    // Lambda^alpha <= E^alpha(P^beta) < Lambda^beta for alpha < beta
    local.seeds = opts.seeds;
    local.seeds.push_back({res.argminRow, res.argminLengths});
    out[idx].emplace(std::move(res));
  }
  std::vector<SpectralPartitionResult> sorted;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });
  for (std::size_t idx : order) sorted.push_back(std::move(*out[idx]));
  return sorted;
}

MonotonicityTable alpha_monotonicity_check(const GraphPtr& graph, int k, const std::vector<double>& grid,
                                           const SpectralOptions& opts, double margin) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("alpha grid must be strictly ascending");
  MonotonicityTable table;
  table.lipschitz = lipschitz_constant(*graph, k);
  auto results = robin_alpha_sweep(graph, k, grid, opts);
  for (std::size_t i = 0; i < results.size(); ++i) {
    MonotonicityRow row;
    row.alpha = grid[i];
    row.value = results[i].value;
    row.classId = results[i].argminClass;
    if (i > 0) {
      const auto& prev = table.rows.back();
      row.increase = row.value - prev.value;
      row.slope = std::abs(row.increase) / (row.alpha - prev.alpha);
      row.increasing = row.increase > margin;
      row.lipschitz = row.slope <= table.lipschitz * (1 + 1e-12);
      if (!row.increasing)
        table.violations.push_back("not increasing at alpha = " + std::to_string(row.alpha) +
                                   " (increase " + std::to_string(row.increase) + ")");
      if (!row.lipschitz)
        table.violations.push_back("slope " + std::to_string(row.slope) + " exceeds " +
                                   std::to_string(table.lipschitz) + " at alpha = " + std::to_string(row.alpha));
    }
    table.rows.push_back(row);
  }
  table.ok = table.violations.empty();
  return table;
}

double distance_to_cheeger_face(const ConfigurationClass& cls, const SegmentLengths& lengths, double level,
                                BoundaryMode mode) {
  const auto& labels = cls.labels();
  const MetricGraph& g = cls.graph();
  std::vector<int> c = cls.boundary_sizes(mode);
  std::vector<int> offset(labels.size() + 1, 0);
  for (std::size_t e = 0; e < labels.size(); ++e) offset[e + 1] = offset[e] + static_cast<int>(labels[e].size());
  const int d = offset.back();
  LinearProgram<double> lp(d + 1);
  lp.objective(d) = -1.0;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    auto& row = lp.add_row(Sense::Equal, g.edge(static_cast<EdgeIndex>(e)).length);
    for (int j = offset[e]; j < offset[e + 1]; ++j) row(j) = 1.0;
  }
  for (int i = 0; i < cls.k(); ++i) {
    auto& row = lp.add_row(Sense::GreaterEqual, c[i] / level * (1 - 1e-12));
    for (std::size_t e = 0; e < labels.size(); ++e)
      for (std::size_t j = 0; j < labels[e].size(); ++j)
        if (labels[e][j] == i + 1) row(offset[e] + static_cast<int>(j)) = 1.0;
  }
  for (std::size_t e = 0; e < labels.size(); ++e) {
    double pos = 0.0;
    for (std::size_t j = 0; j + 1 < labels[e].size(); ++j) {
      pos += lengths[e][j];
      // |prefix(y) - pos| <= d
      for (double sign : {-1.0, 1.0}) {
        auto& row = lp.add_row(sign < 0 ? Sense::LessEqual : Sense::GreaterEqual, pos);
        for (std::size_t q = 0; q <= j; ++q) row(offset[e] + static_cast<int>(q)) = 1.0;
        row(d) = sign;
      }
    }
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return kInf;
  return std::max(0.0, -sol.value);
}

LimitStudy limit_study(const GraphPtr& graph, int k, LimitDirection direction, const std::vector<double>& grid,
                       const SpectralOptions& opts) {
  if (grid.empty()) throw InvalidInput("empty alpha grid");
  LimitStudy study;
  study.direction = direction;
  study.alphaGrid = grid;
  std::sort(study.alphaGrid.begin(), study.alphaGrid.end());

  std::map<std::string, ConfigurationClass> byId;
  ReducedEnumerationOptions ropts;
  ropts.exhaustive = opts.exhaustive;
  enumerate_reduced_classes(graph, k, opts.caps, ropts, [&](const ConfigurationClass& c) {
    byId.emplace(c.id(), c);
    return true;
  });

  if (direction == LimitDirection::ToZero) {
    CheegerOptions copts;
    copts.exhaustive = opts.exhaustive;
    copts.caps = opts.caps;
    copts.jobs = opts.jobs;
    study.cheeger.emplace(cheeger_constant(graph, k, copts));
    study.referenceValue = study.cheeger->value;
    study.referenceClass = study.cheeger->argminClass;
  } else {
    study.dirichlet.emplace(dirichlet_minimal_partition(graph, k, opts));
    study.referenceValue = study.dirichlet->value;
    study.referenceClass = study.dirichlet->argminClass;
  }

  auto results = robin_alpha_sweep(graph, k, study.alphaGrid, opts);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    LimitRow row;
    row.alpha = study.alphaGrid[i];
    row.value = r.value;
    row.valueOverAlpha = r.value / row.alpha;
    row.classId = r.argminRow;
    const ConfigurationClass& cls = byId.at(r.argminRow);
    if (direction == LimitDirection::ToZero) {
      ClassOptimum lp = class_optimum(cls, BoundaryMode::EffectiveDegree);
      const double ck = study.referenceValue;
      row.matchesReference = std::abs(lp.value - ck) <= 1e-9 * std::max(1.0, ck) &&
                             class_of(realize(cls, lp.lengths)).canonical().id() == study.referenceClass;
      row.distance = row.matchesReference ? distance_to_cheeger_face(cls, r.argminLengths, ck) : kInf;
    } else {
      row.matchesReference = r.argminRow == study.dirichlet->argminRow;
      row.distance = row.matchesReference ? max_move(r.argminLengths, study.dirichlet->argminLengths) : kInf;
    }
    row.smallestPart = kInf;
    const Subgraph* smallest = nullptr;
    for (const auto& part : r.argmin->parts())
      if (total_length(part) < row.smallestPart) {
        row.smallestPart = total_length(part);
        smallest = &part;
      }
    row.lowerBoundOverAlpha = smallest->boundary().empty() ? 0.0 : robin_lower_bound(*smallest, row.alpha) / row.alpha;
    study.rows.push_back(row);
    for (const auto& w : r.warnings) study.warnings.push_back("alpha " + std::to_string(row.alpha) + ": " + w);
  }
  return study;
}

}  // namespace mgp

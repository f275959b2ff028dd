#include "mgp/cheeger.hpp"

#include "mgp/parallel.hpp"
#include "mgp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> ratios(const Partition& p, BoundaryMode mode) {
  std::vector<double> r;
  for (const auto& part : p.parts()) {
    double len = total_length(part);
    r.push_back(len > 0 ? boundary_size(part, mode) / len : kInf);
  }
  return r;
}

std::vector<double> part_lengths(const ConfigurationClass& cls, const SegmentLengths& x) {
  std::vector<double> len(cls.k(), 0.0);
  for (std::size_t e = 0; e < x.size(); ++e)
    for (std::size_t j = 0; j < x[e].size(); ++j)
      if (int lab = cls.labels()[e][j]; lab != ConfigurationClass::Unassigned) len[lab - 1] += x[e][j];
  return len;
}

void clean_lengths(const MetricGraph& g, SegmentLengths& x) {
  for (std::size_t e = 0; e < x.size(); ++e) {
    const double len = g.edge(static_cast<EdgeIndex>(e)).length;
    double sum = 0.0;
    for (double& v : x[e]) {
      if (v < 1e-13 * len) v = 0.0;
      sum += v;
    }
    for (double& v : x[e]) v *= len / sum;
  }
}

// Euclidean projection onto {y >= 0, sum y = total}.
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

double pnorm(const std::vector<double>& r, double p) {
  double m = *std::max_element(r.begin(), r.end());
  if (!std::isfinite(m)) return kInf;
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : r) s += std::pow(v / m, p);
  return m * std::pow(s, 1.0 / p);
}

struct Solved {
  ConfigurationClass cls;
  ClassRow row;
};

std::vector<Solved> solve_classes(const GraphPtr& graph, int k, const CheegerOptions& opts, EnumerationReport& report) {
  std::vector<ConfigurationClass> classes;
  ReducedEnumerationOptions ropts;
  ropts.exhaustive = opts.exhaustive;
  report = enumerate_reduced_classes(graph, k, opts.caps, ropts, [&](const ConfigurationClass& c) {
    classes.push_back(c);
    return true;
  });
  std::vector<ClassRow> rows(classes.size());
  parallel_for(classes.size(), opts.jobs, [&](std::size_t i) {
    ClassRow& row = rows[i];
    row.id = classes[i].id();
    row.maxCuts = classes[i].max_cuts();
    row.boundary = classes[i].boundary_sizes(opts.mode);
    ClassOptimum opt = class_optimum(classes[i], row.boundary);
    row.value = opt.value;
    row.lowerBound = opt.value;
    row.lengths = std::move(opt.lengths);
  });
  std::vector<Solved> out;
  for (std::size_t i = 0; i < classes.size(); ++i) out.push_back({std::move(classes[i]), std::move(rows[i])});
  return out;
}

bool ties(double a, double best) { return a <= best + 1e-12 * std::max(1.0, std::abs(best)); }

}  // namespace

double cheeger_energy(const Partition& p, BoundaryMode mode) {
  auto r = ratios(p, mode);
  return *std::max_element(r.begin(), r.end());
}

double cheeger_energy_p(const Partition& p, double exponent, BoundaryMode mode) {
  if (!(exponent >= 1.0)) throw InvalidInput("p must be >= 1");
  return pnorm(ratios(p, mode), exponent);
}

ClassOptimum class_optimum(const ConfigurationClass& cls, BoundaryMode mode) {
  return class_optimum(cls, cls.boundary_sizes(mode));
}

ClassOptimum class_optimum(const ConfigurationClass& cls, const std::vector<int>& boundary) {
  const MetricGraph& g = cls.graph();
  const auto& labels = cls.labels();
  if (static_cast<int>(boundary.size()) != cls.k()) throw InvalidInput("one boundary size per part required");
  if (std::all_of(boundary.begin(), boundary.end(), [](int c) { return c == 0; }))
    return {0.0, cls.nominal_lengths()};
  if (std::any_of(boundary.begin(), boundary.end(), [](int c) { return c == 0; })) return {kInf, {}};

  std::vector<int> offset(labels.size() + 1, 0);
  for (std::size_t e = 0; e < labels.size(); ++e) offset[e + 1] = offset[e] + static_cast<int>(labels[e].size());
  const int s = offset.back();
  LinearProgram<double> lp(s + 1);
  lp.objective(s) = 1.0;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    auto& row = lp.add_row(Sense::Equal, g.edge(static_cast<EdgeIndex>(e)).length);
    for (int j = offset[e]; j < offset[e + 1]; ++j) row(j) = 1.0;
  }
  for (int i = 0; i < cls.k(); ++i) {
    auto& row = lp.add_row(Sense::GreaterEqual, 0.0);
    for (std::size_t e = 0; e < labels.size(); ++e)
      for (std::size_t j = 0; j < labels[e].size(); ++j)
        if (labels[e][j] == i + 1) row(offset[e] + static_cast<int>(j)) = 1.0;
    row(s) = -boundary[i];
  }
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) return {kInf, {}};
  if (sol.status != LpStatus::Optimal) throw SolverFailure("class linear program is unbounded");
  if (!(sol.value > 1e-14)) return {kInf, {}};
  ClassOptimum out;
  out.value = 1.0 / sol.value;
  out.lengths.resize(labels.size());
  for (std::size_t e = 0; e < labels.size(); ++e)
    for (int j = offset[e]; j < offset[e + 1]; ++j) out.lengths[e].push_back(std::max(sol.x(j), 0.0));
  clean_lengths(g, out.lengths);
  return out;
}

ClassOptimum class_optimum_p(const ConfigurationClass& cls, double exponent, BoundaryMode mode,
                             const SegmentLengths* start) {
  if (!(exponent >= 1.0)) throw InvalidInput("p must be >= 1");
  const MetricGraph& g = cls.graph();
  std::vector<int> c = cls.boundary_sizes(mode);
  ClassOptimum lpOpt;
  if (!start) {
    lpOpt = class_optimum(cls, c);
    if (!std::isfinite(lpOpt.value)) return lpOpt;
    start = &lpOpt.lengths;
  }
  SegmentLengths x = *start;
  // keep every part strictly positive so the energy is finite
  {
    SegmentLengths nominal = cls.nominal_lengths();
    for (std::size_t e = 0; e < x.size(); ++e)
      for (std::size_t j = 0; j < x[e].size(); ++j) x[e][j] = 0.999 * x[e][j] + 0.001 * nominal[e][j];
  }
  auto energy = [&](const SegmentLengths& y) {
    auto len = part_lengths(cls, y);
    std::vector<double> r(len.size());
    for (std::size_t i = 0; i < len.size(); ++i) r[i] = c[i] == 0 ? 0.0 : (len[i] > 0 ? c[i] / len[i] : kInf);
    return pnorm(r, exponent);
  };
  double f = energy(x);
  double step = 1e-2 * g.max_edge_length();
  for (int iter = 0; iter < 20000; ++iter) {
    auto len = part_lengths(cls, x);
    // d/dL_i of ||c/L||_p = -(r_i / f)^(p-1) c_i / L_i^2
    std::vector<double> dL(len.size(), 0.0);
    for (std::size_t i = 0; i < len.size(); ++i)
      if (c[i] > 0) dL[i] = -std::pow(c[i] / len[i] / f, exponent - 1) * c[i] / (len[i] * len[i]);
    SegmentLengths trial;
    double fNew = kInf, moved = 0.0;
    for (; step > 1e-18 * g.max_edge_length(); step *= 0.5) {
      trial = x;
      double sq = 0.0;
      moved = 0.0;
      for (std::size_t e = 0; e < x.size(); ++e) {
        for (std::size_t j = 0; j < x[e].size(); ++j)
          if (int lab = cls.labels()[e][j]; lab != ConfigurationClass::Unassigned) trial[e][j] -= step * dL[lab - 1];
        project_simplex(trial[e], g.edge(static_cast<EdgeIndex>(e)).length);
        for (std::size_t j = 0; j < x[e].size(); ++j) {
          double d = trial[e][j] - x[e][j];
          sq += d * d;
          moved = std::max(moved, std::abs(d));
        }
      }
      fNew = energy(trial);
      if (fNew <= f - 1e-4 * sq / step) break;
    }
    if (!(fNew < f)) break;
    bool done = f - fNew <= 1e-15 * f && moved <= 1e-13 * g.max_edge_length();
    x = std::move(trial);
    f = fNew;
    step *= 2.0;
    if (done) break;
  }
  clean_lengths(g, x);
  return {energy(x), x};
}

CheegerResult cheeger_constant(const GraphPtr& graph, int k, const CheegerOptions& opts) {
  if (k < 1) throw InvalidInput("k must be >= 1");
  if (opts.caps.maxCutsPerEdge < 0) throw InvalidInput("maxCutsPerEdge must be >= 0");
  if (opts.p && !(*opts.p >= 1.0)) throw InvalidInput("p must be >= 1");
  CheegerResult res;
  res.mode = opts.mode;
  res.p = opts.p;
  if (k == 1) {
    // the whole graph has empty boundary
    res.argmin.emplace(std::vector<Subgraph>{Subgraph::whole(graph)}, true);
    res.argminClass = class_of(*res.argmin).canonical().id();
    res.perClass.push_back({res.argminClass, 0, {0}, 0.0, 0.0, false, {}});
    res.valueByCap.assign(opts.caps.maxCutsPerEdge + 1, 0.0);
    res.capStable = true;
    return res;
  }

  auto solved = solve_classes(graph, k, opts, res.enumeration);
  res.warnings = res.enumeration.warnings;
  if (res.enumeration.truncated) res.warnings.push_back("class enumeration truncated; value is an upper bound");

  if (opts.p) {
    // a class cannot beat another class's p-energy at its own LP point unless its max-energy optimum is smaller
    double incumbent = kInf;
    for (auto& s : solved)
      if (std::isfinite(s.row.value))
        incumbent = std::min(incumbent, cheeger_energy_p(realize(s.cls, s.row.lengths), *opts.p, opts.mode));
    parallel_for(solved.size(), opts.jobs, [&](std::size_t i) {
      ClassRow& row = solved[i].row;
      if (!std::isfinite(row.lowerBound) || row.lowerBound > incumbent) {
        row.pruned = true;
        row.value = kInf;
        return;
      }
      ClassOptimum o = class_optimum_p(solved[i].cls, *opts.p, opts.mode, &row.lengths);
      row.value = o.value;
      row.lengths = std::move(o.lengths);
    });
  }

  const int cap = opts.caps.maxCutsPerEdge;
  res.valueByCap.assign(cap + 1, kInf);
  res.value = kInf;
  for (const auto& s : solved) {
    for (int c = s.row.maxCuts; c <= cap; ++c) res.valueByCap[c] = std::min(res.valueByCap[c], s.row.value);
    res.value = std::min(res.value, s.row.value);
  }
  if (!std::isfinite(res.value)) throw SolverFailure("no admissible configuration class for k = " + std::to_string(k));
  if (cap == 0) {
    res.warnings.push_back("cut cap 0: sufficiency of the cap is not assessed");
  } else {
    res.capStable = ties(res.valueByCap[cap - 1], res.valueByCap[cap]);
    if (!res.capStable)
      res.warnings.push_back("optimum still decreasing at the cut cap; raise maxCutsPerEdge to confirm");
  }

  for (const auto& s : solved) {
    if (!ties(s.row.value, res.value)) continue;
    Partition p = realize(s.cls, s.row.lengths);
    std::string id = class_of(p).canonical().id();
    if (!res.argmin || id < res.argminClass) {
      res.argmin.emplace(std::move(p));
      res.argminClass = id;
    }
  }
  double check = opts.p ? cheeger_energy_p(*res.argmin, *opts.p, opts.mode) : cheeger_energy(*res.argmin, opts.mode);
  if (check < res.value - 1e-9 * std::max(1.0, res.value))
    res.warnings.push_back("argmin realization has lower energy than its class optimum");
  for (auto& s : solved) res.perClass.push_back(std::move(s.row));
  return res;
}

H1Result h1(const Subgraph& omega) {
  const auto& segs = omega.segments();
  const auto& desc = omega.descendants();
  const std::size_t n = segs.size();
  if (n > 24) throw InvalidInput("h1: subgraph has more than 24 segments");
  // descendant membership per end
  std::vector<std::vector<int>> endsAt(desc.size());
  std::vector<int> degGamma(desc.size());
  for (std::size_t d = 0; d < desc.size(); ++d) {
    degGamma[d] = omega.parent_degree(desc[d].point);
    for (const auto& e : desc[d].ends) endsAt[d].push_back(e.segment);
  }

  H1Result res;
  res.value = kInf;
  std::uint32_t best = 0;
  double bestLen = 0.0;
  std::vector<int> parent(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int boundary = 0;
    for (std::size_t d = 0; d < desc.size(); ++d) {
      int deg = 0, first = -1;
      for (int s : endsAt[d]) {
        if (!(mask >> s & 1u)) continue;
        ++deg;
        if (first < 0)
          first = s;
        else
          parent[find(s)] = find(first);
      }
      if (deg > 0 && deg < degGamma[d]) boundary += std::min(deg, degGamma[d] - deg);
    }
    double len = 0.0;
    int root = -1;
    bool connected = true;
    for (std::size_t s = 0; s < n && connected; ++s) {
      if (!(mask >> s & 1u)) continue;
      len += segs[s].length();
      int r = find(static_cast<int>(s));
      if (root < 0)
        root = r;
      else
        connected = r == root;
    }
    if (!connected) continue;
    ++res.subsets;
    double ratio = boundary / len;
    if (ratio < res.value * (1 - 1e-14) || (ratio <= res.value * (1 + 1e-14) && len > bestLen)) {
      res.value = ratio;
      best = mask;
      bestLen = len;
    }
  }

  std::vector<Segment> chosen;
  std::vector<int> remap(n, -1);
  for (std::size_t s = 0; s < n; ++s)
    if (best >> s & 1u) {
      remap[s] = static_cast<int>(chosen.size());
      chosen.push_back(segs[s]);
    }
  std::vector<Descendant> kept;
  for (const auto& d : desc) {
    Descendant nd;
    for (const auto& e : d.ends)
      if (remap[e.segment] >= 0) nd.ends.push_back({remap[e.segment], e.side});
    if (!nd.ends.empty()) kept.push_back(std::move(nd));
  }
  res.argmin.emplace(omega.parent_ptr(), std::move(chosen), std::move(kept));
  double own = boundary_size(omega) / total_length(omega);
  res.calibrable = std::abs(res.value - own) <= 1e-12 * std::max(1.0, own);
  return res;
}

VariantResult cheeger_variant(const GraphPtr& graph, int k, const EnumerationCaps& caps, int jobs) {
  if (k < 2) throw InvalidInput("cheeger variant needs k >= 2");
  CheegerOptions opts;
  opts.caps = caps;
  opts.jobs = jobs;
  EnumerationReport report;
  auto solved = solve_classes(graph, k, opts, report);
  VariantResult res;
  res.warnings = report.warnings;
  // max_i h1(Omega_i) <= max_i c_i / L_i, so the best class energy bounds the variant from above
  double upper = kInf;
  for (const auto& s : solved) upper = std::min(upper, s.row.value);
  std::vector<double> value(solved.size(), kInf);
  std::vector<char> evaluated(solved.size(), 0);
  parallel_for(solved.size(), jobs, [&](std::size_t i) {
    if (!std::isfinite(solved[i].row.value)) return;
    Partition p = realize(solved[i].cls, solved[i].row.lengths);
    // h1 >= 1 / |Omega_i| since every proper subgraph has a boundary point
    double lower = 0.0;
    for (const auto& part : p.parts()) lower = std::max(lower, 1.0 / total_length(part));
    if (lower > upper * (1 + 1e-12)) return;
    double m = 0.0;
    for (const auto& part : p.parts()) m = std::max(m, h1(part).value);
    value[i] = m;
    evaluated[i] = 1;
  });
  res.value = kInf;
  for (std::size_t i = 0; i < solved.size(); ++i) {
    res.evaluated += evaluated[i];
    if (value[i] < res.value) {
      res.value = value[i];
      res.argminClass = solved[i].row.id;
    }
  }
  return res;
}

}  // namespace mgp

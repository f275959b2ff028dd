#include "mgp/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace mgp {

namespace {

bool same_length(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

std::vector<std::vector<int>> full_options(int k, int cap, bool exhaustive) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  const int lo = exhaustive ? 1 : 0;
  std::function<void()> rec = [&] {
    if (!seq.empty()) out.push_back(seq);
    if (static_cast<int>(seq.size()) == cap + 1) return;
    for (int x = lo; x <= k; ++x) {
      if (!seq.empty() && x == 0 && seq.back() == 0) continue;
      seq.push_back(x);
      rec();
      seq.pop_back();
    }
  };
  rec();
  return out;
}

// restricted growth strings of length m
void set_partitions(int m, std::vector<std::vector<int>>& out) {
  std::vector<int> a(m, 0);
  std::function<void(int, int)> rec = [&](int i, int maxUsed) {
    if (i == m) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= maxUsed + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(maxUsed, b));
    }
  };
  if (m == 0)
    out.push_back({});
  else
    rec(0, -1);
}

}  // namespace

EnumerationReport enumerate_configuration_classes(const GraphPtr& graph, int k, const EnumerationCaps& caps,
                                                  bool exhaustive, const ClassVisitor& visit) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (caps.maxCutsPerEdge < 0) throw InvalidInput("maxCutsPerEdge must be nonnegative");
  const MetricGraph& g = *graph;
  const auto options = full_options(k, caps.maxCutsPerEdge, exhaustive);
  EnumerationReport report;
  std::vector<std::vector<int>> labels(g.edge_count());
  bool stop = false;

  std::map<int, std::vector<std::vector<int>>> partitionsOfSize;
  auto partitions = [&](int m) -> const std::vector<std::vector<int>>& {
    auto it = partitionsOfSize.find(m);
    if (it == partitionsOfSize.end()) {
      std::vector<std::vector<int>> ps;
      set_partitions(m, ps);
      it = partitionsOfSize.emplace(m, std::move(ps)).first;
    }
    return it->second;
  };

  std::vector<std::vector<int>> blocks(g.vertex_count());
  // per vertex: list of (part, positions of its ends)
  std::vector<std::vector<std::pair<int, std::vector<int>>>> groups(g.vertex_count());
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (vertex, group)

  std::function<void(std::size_t)> glue = [&](std::size_t slot) {
    if (stop) return;
    if (slot == slots.size()) {
      ++report.candidates;
      std::optional<ConfigurationClass> cls;
      try {
        cls.emplace(graph, k, labels, blocks);
      } catch (const InvalidInput&) {
        return;
      }
      if (cls->encoding() != cls->canonical_encoding()) return;
      ++report.emitted;
      if (!visit(*cls)) stop = true;
      if (report.emitted >= caps.maxClasses) {
        report.truncated = true;
        report.warnings.push_back("class limit reached; enumeration truncated");
        stop = true;
      }
      return;
    }
    auto [v, gi] = slots[slot];
    const auto& [part, pos] = groups[v][gi];
    for (const auto& rgs : partitions(static_cast<int>(pos.size()))) {
      for (std::size_t j = 0; j < pos.size(); ++j) blocks[v][pos[j]] = part * 64 + rgs[j] + 1;
      glue(slot + 1);
      if (stop) return;
    }
  };

  std::function<void(std::size_t)> assign = [&](std::size_t e) {
    if (stop) return;
    if (e == g.edge_count()) {
      std::vector<bool> used(k + 1, false);
      for (const auto& l : labels)
        for (int x : l) used[x] = true;
      for (int p = 1; p <= k; ++p)
        if (!used[p]) return;
      slots.clear();
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto& inc = g.incidence(static_cast<VertexIndex>(v));
        blocks[v].assign(inc.size(), 0);
        groups[v].clear();
        std::map<int, std::vector<int>> byPart;
        for (std::size_t j = 0; j < inc.size(); ++j) {
          const auto& l = labels[inc[j].edge];
          int label = inc[j].side == EndSide::From ? l.front() : l.back();
          if (label) byPart[label].push_back(static_cast<int>(j));
        }
        for (auto& [part, pos] : byPart) {
          groups[v].push_back({part, pos});
          slots.push_back({v, groups[v].size() - 1});
        }
      }
      glue(0);
      return;
    }
    for (const auto& opt : options) {
      labels[e] = opt;
      assign(e + 1);
      if (stop) return;
    }
  };
  assign(0);
  if (report.emitted == 0)
    report.warnings.push_back("no class with " + std::to_string(k) + " parts fits within " +
                              std::to_string(caps.maxCutsPerEdge) + " cuts per edge");
  return report;
}

std::vector<std::vector<VertexIndex>> vertex_automorphisms(const MetricGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  std::vector<std::vector<std::vector<double>>> lens(n, std::vector<std::vector<double>>(n));
  for (const auto& e : g.edges()) {
    lens[e.u][e.v].push_back(e.length);
    if (e.u != e.v) lens[e.v][e.u].push_back(e.length);
  }
  for (auto& row : lens)
    for (auto& l : row) std::sort(l.begin(), l.end());
  auto match = [&](int a, int b, int c, int d) {
    const auto &x = lens[a][b], &y = lens[c][d];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!same_length(x[i], y[i])) return false;
    return true;
  };
  std::vector<std::vector<VertexIndex>> out;
  std::vector<VertexIndex> sigma(n, -1);
  std::vector<bool> taken(n, false);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(sigma);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (taken[c] || g.degree(c) != g.degree(i)) continue;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) ok = match(i, j, c, j == i ? c : sigma[j]);
      if (!ok) continue;
      sigma[i] = c;
      taken[c] = true;
      rec(i + 1);
      taken[c] = false;
      sigma[i] = -1;
    }
  };
  rec(0);
  return out;
}

namespace {

struct EdgeGroup {
  VertexIndex a, b;
  double length;
  bool loop;
  std::vector<EdgeIndex> edges;
  std::vector<bool> reversed;  // edge orientation differs from (a, b)
};

std::vector<EdgeGroup> edge_groups(const MetricGraph& g) {
  std::vector<EdgeGroup> groups;
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    const Edge& e = g.edge(static_cast<EdgeIndex>(ei));
    auto it = std::find_if(groups.begin(), groups.end(), [&](const EdgeGroup& gr) {
      return same_length(gr.length, e.length) &&
             ((gr.a == e.u && gr.b == e.v) || (gr.a == e.v && gr.b == e.u));
    });
    if (it == groups.end()) {
      groups.push_back({e.u, e.v, e.length, e.is_loop(), {}, {}});
      it = groups.end() - 1;
    }
    it->edges.push_back(static_cast<EdgeIndex>(ei));
    it->reversed.push_back(!e.is_loop() && e.u != it->a);
  }
  return groups;
}

int find_group(const std::vector<EdgeGroup>& groups, VertexIndex x, VertexIndex y, double len) {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& gr = groups[i];
    if (same_length(gr.length, len) && ((gr.a == x && gr.b == y) || (gr.a == y && gr.b == x)))
      return static_cast<int>(i);
  }
  return -1;
}

struct OptionInfo {
  std::vector<int> seq;
  unsigned mask = 0;
  unsigned interiorMask = 0;
  std::vector<int> count;  // per label
};

}  // namespace

EnumerationReport enumerate_reduced_classes(const GraphPtr& graph, int k, const EnumerationCaps& caps,
                                            const ReducedEnumerationOptions& opts, const ClassVisitor& visit) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (k > 12) throw InvalidInput("k too large for the reduced enumeration");
  if (caps.maxCutsPerEdge < 0) throw InvalidInput("maxCutsPerEdge must be nonnegative");
  const MetricGraph& g = *graph;
  const int n = static_cast<int>(g.vertex_count());
  EnumerationReport report;

  // option table
  std::vector<OptionInfo> options;
  std::map<std::vector<int>, int> index;
  auto add = [&](const std::vector<int>& seq) {
    OptionInfo o;
    o.seq = seq;
    o.count.assign(k + 1, 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      o.count[seq[i]]++;
      if (seq[i]) o.mask |= 1u << seq[i];
      if (i > 0 && i + 1 < seq.size()) o.interiorMask |= 1u << seq[i];
    }
    index[seq] = static_cast<int>(options.size());
    options.push_back(std::move(o));
  };
  if (!opts.exhaustive) add({0});
  {
    std::vector<int> seq;
    std::function<void()> rec = [&] {
      if (!seq.empty()) add(seq);
      if (static_cast<int>(seq.size()) == caps.maxCutsPerEdge + 1) return;
      for (int x = 1; x <= k; ++x) {
        if (!seq.empty() && seq.back() == x) continue;
        seq.push_back(x);
        rec();
        seq.pop_back();
      }
    };
    rec();
  }
  const int nOpt = static_cast<int>(options.size());
  std::vector<int> reverseOf(nOpt), loopNorm(nOpt);
  for (int i = 0; i < nOpt; ++i) {
    auto r = options[i].seq;
    std::reverse(r.begin(), r.end());
    reverseOf[i] = index.at(r);
    loopNorm[i] = std::min(i, reverseOf[i]);
  }

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(k + 1);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin() + 1, p.end()));
  }
  // relabeled[pi][opt]
  std::vector<std::vector<int>> relabeled(perms.size(), std::vector<int>(nOpt));
  for (std::size_t pi = 0; pi < perms.size(); ++pi)
    for (int i = 0; i < nOpt; ++i) {
      auto s = options[i].seq;
      for (int& x : s) x = perms[pi][x];
      relabeled[pi][i] = index.at(s);
    }

  const auto groups = edge_groups(g);
  const int nGroups = static_cast<int>(groups.size());
  // symmetry actions: (group map, reversal flags)
  struct Action {
    std::vector<int> target;
    std::vector<char> reversed;
  };
  std::vector<Action> actions;
  for (const auto& sigma : vertex_automorphisms(g)) {
    Action act;
    for (const auto& gr : groups) {
      int t = find_group(groups, sigma[gr.a], sigma[gr.b], gr.length);
      if (t < 0 || groups[t].edges.size() != gr.edges.size()) throw SolverFailure("inconsistent automorphism");
      act.target.push_back(t);
      act.reversed.push_back(!gr.loop && groups[t].a != sigma[gr.a]);
    }
    actions.push_back(std::move(act));
  }

  // allowed options per group
  std::vector<std::vector<int>> allowed(nGroups);
  for (int gi = 0; gi < nGroups; ++gi)
    for (int i = 0; i < nOpt; ++i) {
      if (groups[gi].loop && loopNorm[i] != i) continue;
      if (options[i].interiorMask && 2.0 / groups[gi].length >= opts.isolatedBound) continue;
      allowed[gi].push_back(i);
    }

  std::vector<int> posGroup;
  std::vector<int> groupStart(nGroups + 1, 0);
  for (int gi = 0; gi < nGroups; ++gi) {
    for (std::size_t j = 0; j < groups[gi].edges.size(); ++j) posGroup.push_back(gi);
    groupStart[gi + 1] = static_cast<int>(posGroup.size());
  }
  const int nPos = static_cast<int>(posGroup.size());
  const unsigned full = ((1u << (k + 1)) - 1) & ~1u;

  std::vector<int> choice(nPos, 0);
  std::vector<int> transformed(nPos);
  std::vector<int> uf(static_cast<std::size_t>((k + 1) * n));
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  auto is_canonical = [&]() {
    for (std::size_t ai = 0; ai < actions.size(); ++ai) {
      const auto& act = actions[ai];
      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        if (ai == 0 && pi == 0) continue;
        std::vector<int> fill(groupStart.begin(), groupStart.end() - 1);
        for (int p = 0; p < nPos; ++p) {
          int gi = posGroup[p];
          int o = relabeled[pi][choice[p]];
          if (act.reversed[gi]) o = reverseOf[o];
          if (groups[gi].loop) o = loopNorm[o];
          transformed[fill[act.target[gi]]++] = o;
        }
        for (int gi = 0; gi < nGroups; ++gi) {
          auto b = transformed.begin() + groupStart[gi], e = transformed.begin() + groupStart[gi + 1];
          std::sort(b, e);
          auto cb = choice.begin() + groupStart[gi];
          auto [x, y] = std::mismatch(b, e, cb);
          if (x == e) continue;
          if (*x < *y) return false;
          break;
        }
      }
    }
    return true;
  };

  auto valid = [&]() {
    unsigned mask = 0;
    std::vector<int> count(k + 1, 0);
    unsigned interior = 0;
    for (int p = 0; p < nPos; ++p) {
      const auto& o = options[choice[p]];
      mask |= o.mask;
      interior |= o.interiorMask;
      for (int x = 1; x <= k; ++x) count[x] += o.count[x];
    }
    if (mask != full) return false;
    for (int x = 1; x <= k; ++x)
      if ((interior >> x & 1u) && count[x] != 1) return false;
    std::iota(uf.begin(), uf.end(), 0);
    std::vector<char> present(uf.size(), 0);
    for (int p = 0; p < nPos; ++p) {
      const auto& gr = groups[posGroup[p]];
      const auto& s = options[choice[p]].seq;
      if (s.front()) present[s.front() * n + gr.a] = 1;
      if (s.back()) present[s.back() * n + gr.b] = 1;
      if (s.size() == 1 && s[0]) uf[find(s[0] * n + gr.a)] = find(s[0] * n + gr.b);
    }
    for (int x = 1; x <= k; ++x) {
      int root = -1;
      for (int v = 0; v < n; ++v) {
        if (!present[x * n + v]) continue;
        int r = find(x * n + v);
        if (root < 0)
          root = r;
        else if (root != r)
          return false;
      }
    }
    return true;
  };

  bool stop = false;
  std::vector<int> used(k + 1, 0);
  unsigned usedMask = 0, usedInterior = 0;
  std::function<void(int)> rec = [&](int p) {
    if (stop) return;
    if (p == nPos) {
      ++report.candidates;
      if (!valid() || !is_canonical()) return;
      std::vector<std::vector<int>> labels(g.edge_count());
      for (int q = 0; q < nPos; ++q) {
        const auto& gr = groups[posGroup[q]];
        int j = q - groupStart[posGroup[q]];
        auto s = options[choice[q]].seq;
        if (gr.reversed[j]) std::reverse(s.begin(), s.end());
        labels[gr.edges[j]] = std::move(s);
      }
      ++report.emitted;
      if (!visit(ConfigurationClass::coarsest(graph, k, std::move(labels)))) stop = true;
      if (report.emitted >= caps.maxClasses) {
        report.truncated = true;
        report.warnings.push_back("class limit reached; enumeration truncated");
        stop = true;
      }
      return;
    }
    int gi = posGroup[p];
    int minOpt = p > groupStart[gi] ? choice[p - 1] : -1;
    const int remaining = nPos - p - 1;
    for (int o : allowed[gi]) {
      if (o < minOpt) continue;
      const auto& opt = options[o];
      // a label used by an interior segment must not occur anywhere else
      bool clash = false;
      for (int x = 1; x <= k && !clash; ++x) {
        if (!opt.count[x]) continue;
        int total = used[x] + opt.count[x];
        bool isolated = (usedInterior >> x & 1u) || (opt.interiorMask >> x & 1u);
        clash = isolated && total > 1;
      }
      if (clash) continue;
      unsigned covered = usedMask | opt.mask;
      if (std::popcount(full & ~covered) > remaining * (caps.maxCutsPerEdge + 1)) continue;
      for (int x = 1; x <= k; ++x) used[x] += opt.count[x];
      const unsigned savedMask = usedMask, savedInterior = usedInterior;
      usedMask = covered;
      usedInterior |= opt.interiorMask;
      choice[p] = o;
      rec(p + 1);
      for (int x = 1; x <= k; ++x) used[x] -= opt.count[x];
      usedMask = savedMask;
      usedInterior = savedInterior;
      if (stop) return;
    }
  };
  rec(0);
  if (report.emitted == 0)
    report.warnings.push_back("no class with " + std::to_string(k) + " parts fits within " +
                              std::to_string(caps.maxCutsPerEdge) + " cuts per edge");
  return report;
}

bool equivalent_classes(const ConfigurationClass& a, const ConfigurationClass& b) {
  if (&a.graph() != &b.graph() && a.graph_ptr() != b.graph_ptr()) throw InvalidInput("classes on different graphs");
  if (a.k() != b.k()) return false;
  const MetricGraph& g = a.graph();
  const auto target = b.canonical_encoding();
  const auto groups = edge_groups(g);
  for (const auto& sigma : vertex_automorphisms(g)) {
    // map each edge to an edge of the image group; try every bijection inside groups
    std::vector<std::vector<EdgeIndex>> images(groups.size());
    std::vector<std::vector<char>> flips(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& gr = groups[gi];
      int t = find_group(groups, sigma[gr.a], sigma[gr.b], gr.length);
      images[gi] = groups[t].edges;
    }
    std::vector<std::vector<EdgeIndex>> perm = images;
    for (auto& p : perm) std::sort(p.begin(), p.end());
    std::function<bool(std::size_t)> tryGroup = [&](std::size_t gi) -> bool {
      if (gi == groups.size()) {
        std::vector<std::vector<int>> labels(g.edge_count());
        std::vector<std::vector<int>> blocks(g.vertex_count());
        for (std::size_t v = 0; v < g.vertex_count(); ++v) blocks[v].assign(g.degree(static_cast<VertexIndex>(v)), 0);
        for (std::size_t gj = 0; gj < groups.size(); ++gj)
          for (std::size_t j = 0; j < groups[gj].edges.size(); ++j) {
            EdgeIndex src = groups[gj].edges[j], dst = perm[gj][j];
            const Edge &es = g.edge(src), &ed = g.edge(dst);
            bool rev = !es.is_loop() && sigma[es.u] != ed.u;
            auto l = a.labels()[src];
            if (rev) std::reverse(l.begin(), l.end());
            labels[dst] = l;
            for (EndSide side : {EndSide::From, EndSide::To}) {
              EdgeEnd from{src, side};
              EndSide ts = rev ? (side == EndSide::From ? EndSide::To : EndSide::From) : side;
              EdgeEnd to{dst, ts};
              VertexIndex vs = g.endpoint(from), vd = g.endpoint(to);
              const auto &is = g.incidence(vs), &id = g.incidence(vd);
              auto js = std::find(is.begin(), is.end(), from) - is.begin();
              auto jd = std::find(id.begin(), id.end(), to) - id.begin();
              blocks[vd][jd] = a.blocks()[vs][js];
            }
          }
        ConfigurationClass c(a.graph_ptr(), a.k(), std::move(labels), std::move(blocks));
        return c.canonical_encoding() == target;
      }
      do {
        if (tryGroup(gi + 1)) return true;
      } while (std::next_permutation(perm[gi].begin(), perm[gi].end()));
      return false;
    };
    if (tryGroup(0)) return true;
  }
  return false;
}

}  // namespace mgp

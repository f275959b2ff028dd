#include "mgp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace mgp {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

void renumber(std::vector<int>& blocks) {
  std::map<int, int> seen;
  for (int& b : blocks) {
    if (b == 0) continue;
    auto it = seen.find(b);
    if (it == seen.end()) it = seen.emplace(b, static_cast<int>(seen.size()) + 1).first;
    b = it->second;
  }
}

int end_label(const std::vector<std::vector<int>>& labels, EdgeEnd end) {
  const auto& l = labels[end.edge];
  return end.side == EndSide::From ? l.front() : l.back();
}

}  // namespace

Partition::Partition(std::vector<Subgraph> parts, bool exhaustive) : parts_(std::move(parts)), exhaustive_(exhaustive) {
  if (parts_.empty()) throw InvalidInput("partition needs at least one part");
  const MetricGraph& g = parts_.front().parent();
  for (const auto& p : parts_)
    if (&p.parent() != &g) throw InvalidInput("partition parts live on different graphs");
  std::vector<std::vector<std::pair<double, double>>> used(g.edge_count());
  for (const auto& p : parts_)
    for (const auto& s : p.segments()) used[s.edge].push_back({s.from, s.to});
  for (std::size_t e = 0; e < used.size(); ++e) {
    auto& iv = used[e];
    std::sort(iv.begin(), iv.end());
    const double len = g.edge(static_cast<EdgeIndex>(e)).length, tol = 1e-12 * len;
    double reach = 0.0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (i > 0 && iv[i].first < iv[i - 1].second - tol)
        throw InvalidInput("parts overlap on edge '" + g.edge(static_cast<EdgeIndex>(e)).id + "'");
      if (iv[i].first > reach + tol && exhaustive_)
        throw InvalidInput("exhaustive partition leaves a gap on edge '" + g.edge(static_cast<EdgeIndex>(e)).id + "'");
      reach = std::max(reach, iv[i].second);
    }
    if (exhaustive_ && reach < len - tol)
      throw InvalidInput("exhaustive partition leaves a gap on edge '" + g.edge(static_cast<EdgeIndex>(e)).id + "'");
  }
}

ConfigurationClass::ConfigurationClass(GraphPtr graph, int k, std::vector<std::vector<int>> labels,
                                       std::vector<std::vector<int>> blocks)
    : graph_(std::move(graph)), k_(k), labels_(std::move(labels)), blocks_(std::move(blocks)) {
  const MetricGraph& g = *graph_;
  if (k_ < 1) throw InvalidInput("class needs k >= 1");
  if (labels_.size() != g.edge_count()) throw InvalidInput("class needs one label sequence per edge");
  if (blocks_.size() != g.vertex_count()) throw InvalidInput("class needs one block list per vertex");
  std::vector<int> segBase(labels_.size() + 1, 0);
  std::vector<bool> used(k_ + 1, false);
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    const auto& l = labels_[e];
    if (l.empty()) throw InvalidInput("empty label sequence");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] < 0 || l[i] > k_) throw InvalidInput("label out of range");
      if (i > 0 && l[i] == 0 && l[i - 1] == 0) throw InvalidInput("adjacent unassigned segments");
      used[l[i]] = true;
    }
    segBase[e + 1] = segBase[e] + static_cast<int>(l.size());
  }
  for (int p = 1; p <= k_; ++p)
    if (!used[p]) throw InvalidInput("part " + std::to_string(p) + " has no segment");

  Dsu dsu(segBase.back());
  auto segment_at = [&](EdgeEnd end) {
    return end.side == EndSide::From ? segBase[end.edge] : segBase[end.edge + 1] - 1;
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incidence(static_cast<VertexIndex>(v));
    auto& b = blocks_[v];
    if (b.size() != inc.size()) throw InvalidInput("block list size differs from vertex degree");
    std::map<int, std::pair<int, int>> blockInfo;  // id -> (label, segment)
    for (std::size_t j = 0; j < inc.size(); ++j) {
      int label = end_label(labels_, inc[j]);
      if ((label == 0) != (b[j] == 0)) throw InvalidInput("unassigned ends must have block 0");
      if (label == 0) continue;
      auto it = blockInfo.find(b[j]);
      if (it == blockInfo.end()) {
        blockInfo.emplace(b[j], std::make_pair(label, segment_at(inc[j])));
      } else {
        if (it->second.first != label) throw InvalidInput("descendant block mixes parts");
        dsu.unite(it->second.second, segment_at(inc[j]));
      }
    }
    renumber(b);
  }
  std::vector<int> root(k_ + 1, -1);
  for (std::size_t e = 0; e < labels_.size(); ++e)
    for (std::size_t i = 0; i < labels_[e].size(); ++i) {
      int p = labels_[e][i];
      if (p == 0) continue;
      int r = dsu.find(segBase[e] + static_cast<int>(i));
      if (root[p] < 0)
        root[p] = r;
      else if (root[p] != r)
        throw InvalidInput("part " + std::to_string(p) + " is not connected");
    }
}

ConfigurationClass ConfigurationClass::coarsest(GraphPtr graph, int k, std::vector<std::vector<int>> labels) {
  std::vector<std::vector<int>> blocks(graph->vertex_count());
  for (std::size_t v = 0; v < graph->vertex_count(); ++v)
    for (const auto& end : graph->incidence(static_cast<VertexIndex>(v))) blocks[v].push_back(end_label(labels, end));
  return ConfigurationClass(std::move(graph), k, std::move(labels), std::move(blocks));
}

int ConfigurationClass::max_cuts() const {
  int m = 0;
  for (std::size_t e = 0; e < labels_.size(); ++e) m = std::max(m, cuts(static_cast<EdgeIndex>(e)));
  return m;
}

bool ConfigurationClass::has_unassigned() const {
  for (const auto& l : labels_)
    if (std::find(l.begin(), l.end(), 0) != l.end()) return true;
  return false;
}

std::vector<int> ConfigurationClass::encoding() const {
  std::vector<int> out{k_};
  for (const auto& l : labels_) {
    out.push_back(static_cast<int>(l.size()));
    out.insert(out.end(), l.begin(), l.end());
  }
  for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<int> ConfigurationClass::canonical_encoding() const {
  const MetricGraph& g = *graph_;
  std::vector<EdgeIndex> loops;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (g.edge(static_cast<EdgeIndex>(e)).is_loop()) loops.push_back(static_cast<EdgeIndex>(e));
  if (loops.size() > 16) throw InvalidInput("too many loops for canonical form");

  std::vector<int> perm(k_ + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  std::vector<std::vector<int>> labels;
  std::vector<std::vector<int>> blocks;
  for (unsigned mask = 0; mask < (1u << loops.size()); ++mask) {
    labels = labels_;
    blocks = blocks_;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      EdgeIndex e = loops[i];
      std::reverse(labels[e].begin(), labels[e].end());
      VertexIndex u = g.edge(e).u;
      const auto& inc = g.incidence(u);
      std::size_t a = 0, b = 0;
      for (std::size_t j = 0; j < inc.size(); ++j) {
        if (inc[j] == EdgeEnd{e, EndSide::From}) a = j;
        if (inc[j] == EdgeEnd{e, EndSide::To}) b = j;
      }
      std::swap(blocks[u][a], blocks[u][b]);
    }
    for (auto& b : blocks) renumber(b);
    std::iota(perm.begin() + 1, perm.end(), 1);
    do {
      std::vector<int> enc{k_};
      for (const auto& l : labels) {
        enc.push_back(static_cast<int>(l.size()));
        for (int x : l) enc.push_back(perm[x]);
      }
      for (const auto& b : blocks) enc.insert(enc.end(), b.begin(), b.end());
      if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
  }
  return best;
}

ConfigurationClass ConfigurationClass::canonical() const {
  std::vector<int> enc = canonical_encoding();
  std::size_t pos = 1;
  std::vector<std::vector<int>> labels(graph_->edge_count());
  for (auto& l : labels) {
    int n = enc[pos++];
    l.assign(enc.begin() + pos, enc.begin() + pos + n);
    pos += n;
  }
  std::vector<std::vector<int>> blocks(graph_->vertex_count());
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    int d = graph_->degree(static_cast<VertexIndex>(v));
    blocks[v].assign(enc.begin() + pos, enc.begin() + pos + d);
    pos += d;
  }
  return ConfigurationClass(graph_, k_, std::move(labels), std::move(blocks));
}

std::string encoding_id(const std::vector<int>& enc, const MetricGraph& g) {
  std::ostringstream os;
  std::size_t pos = 1;
  os << "k" << enc[0] << ":";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    int n = enc[pos++];
    os << (e ? "|" : "");
    for (int i = 0; i < n; ++i) os << (i ? "." : "") << enc[pos++];
  }
  os << "#";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << (v ? "/" : "");
    int d = g.degree(static_cast<VertexIndex>(v));
    for (int j = 0; j < d; ++j) os << enc[pos++];
  }
  return os.str();
}

std::string ConfigurationClass::id() const { return encoding_id(canonical_encoding(), *graph_); }

SegmentLengths ConfigurationClass::nominal_lengths() const {
  SegmentLengths out(labels_.size());
  for (std::size_t e = 0; e < labels_.size(); ++e)
    out[e].assign(labels_[e].size(), graph_->edge(static_cast<EdgeIndex>(e)).length / labels_[e].size());
  return out;
}

std::vector<int> ConfigurationClass::boundary_sizes(BoundaryMode mode) const {
  Partition p = realize(*this, nominal_lengths());
  std::vector<int> out;
  for (const auto& part : p.parts()) out.push_back(boundary_size(part, mode));
  return out;
}

Partition realize(const ConfigurationClass& cls, const SegmentLengths& lengths) {
  const MetricGraph& g = cls.graph();
  const auto& labels = cls.labels();
  if (lengths.size() != labels.size()) throw InvalidInput("realize: one length vector per edge required");

  // positions and zero flags per class segment
  std::vector<std::vector<double>> from(labels.size()), to(labels.size());
  std::vector<std::vector<char>> zero(labels.size());
  for (std::size_t e = 0; e < labels.size(); ++e) {
    const double len = g.edge(static_cast<EdgeIndex>(e)).length;
    if (lengths[e].size() != labels[e].size()) throw InvalidInput("realize: wrong number of segment lengths");
    double sum = 0.0, kept = 0.0;
    for (double x : lengths[e]) {
      if (x < -1e-12 * len || !std::isfinite(x)) throw InvalidInput("realize: negative segment length");
      sum += x;
    }
    if (std::abs(sum - len) > 1e-12 * len * std::max<std::size_t>(1, lengths[e].size()))
      throw InvalidInput("realize: segment lengths do not sum to the edge length on '" +
                         g.edge(static_cast<EdgeIndex>(e)).id + "'");
    zero[e].resize(labels[e].size());
    for (std::size_t i = 0; i < labels[e].size(); ++i) {
      zero[e][i] = lengths[e][i] <= 1e-12 * len;
      if (!zero[e][i]) kept += lengths[e][i];
    }
    double pos = 0.0;
    for (std::size_t i = 0; i < labels[e].size(); ++i) {
      from[e].push_back(pos);
      if (!zero[e][i]) pos += lengths[e][i] * (len / kept);
      to[e].push_back(pos);
    }
    for (std::size_t i = labels[e].size(); i-- > 0;) {
      if (zero[e][i]) continue;
      to[e][i] = len;
      break;
    }
  }

  std::vector<Subgraph> parts;
  for (int p = 1; p <= cls.k(); ++p) {
    // slots: two per class segment of part p
    std::vector<std::pair<EdgeIndex, int>> segs;
    std::map<std::pair<EdgeIndex, int>, int> segIndex;
    for (std::size_t e = 0; e < labels.size(); ++e)
      for (std::size_t i = 0; i < labels[e].size(); ++i)
        if (labels[e][i] == p) {
          segIndex[{static_cast<EdgeIndex>(e), static_cast<int>(i)}] = static_cast<int>(segs.size());
          segs.push_back({static_cast<EdgeIndex>(e), static_cast<int>(i)});
        }
    Dsu dsu(2 * segs.size());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const auto& inc = g.incidence(static_cast<VertexIndex>(v));
      std::map<int, int> firstSlot;
      for (std::size_t j = 0; j < inc.size(); ++j) {
        EdgeEnd end = inc[j];
        int idx = end.side == EndSide::From ? 0 : static_cast<int>(labels[end.edge].size()) - 1;
        if (labels[end.edge][idx] != p) continue;
        int slot = 2 * segIndex[{end.edge, idx}] + (end.side == EndSide::To ? 1 : 0);
        auto [it, fresh] = firstSlot.emplace(cls.blocks()[v][j], slot);
        if (!fresh) dsu.unite(it->second, slot);
      }
    }
    for (std::size_t s = 0; s < segs.size(); ++s)
      if (zero[segs[s].first][segs[s].second]) dsu.unite(static_cast<int>(2 * s), static_cast<int>(2 * s + 1));

    std::vector<Segment> out;
    std::vector<int> outIndex(segs.size(), -1);
    for (std::size_t s = 0; s < segs.size(); ++s) {
      auto [e, i] = segs[s];
      if (zero[e][i]) continue;
      outIndex[s] = static_cast<int>(out.size());
      out.push_back({e, from[e][i], to[e][i]});
    }
    if (out.empty()) throw InvalidInput("realize: part " + std::to_string(p) + " vanishes");
    std::map<int, std::size_t> groupOf;
    std::vector<Descendant> desc;
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (outIndex[s] < 0) continue;
      for (int side = 0; side < 2; ++side) {
        int root = dsu.find(static_cast<int>(2 * s + side));
        auto [it, fresh] = groupOf.emplace(root, desc.size());
        if (fresh) desc.push_back({});
        desc[it->second].ends.push_back({outIndex[s], side ? EndSide::To : EndSide::From});
      }
    }
    // points are filled in from the ends by the Subgraph constructor
    for (auto& d : desc) {
      const Segment& s = out[d.ends.front().segment];
      double x = d.ends.front().side == EndSide::From ? s.from : s.to;
      const Edge& edge = g.edge(s.edge);
      if (x == 0.0)
        d.point.vertex = edge.u;
      else if (x == edge.length)
        d.point.vertex = edge.v;
      else
        d.point = GraphPoint{-1, s.edge, x};
    }
    parts.emplace_back(cls.graph_ptr(), std::move(out), std::move(desc));
  }
  bool exhaustive = true;
  for (std::size_t e = 0; e < labels.size(); ++e)
    for (std::size_t i = 0; i < labels[e].size(); ++i)
      if (labels[e][i] == 0 && !zero[e][i]) exhaustive = false;
  return Partition(std::move(parts), exhaustive);
}

ConfigurationClass class_of(const Partition& p) {
  const MetricGraph& g = p.graph();
  struct Piece {
    int part;
    int segment;
    double from, to;
  };
  std::vector<std::vector<Piece>> pieces(g.edge_count());
  for (int i = 0; i < p.k(); ++i) {
    const auto& segs = p.part(i).segments();
    for (std::size_t s = 0; s < segs.size(); ++s)
      pieces[segs[s].edge].push_back({i, static_cast<int>(s), segs[s].from, segs[s].to});
  }
  std::vector<std::vector<int>> labels(g.edge_count());
  for (std::size_t e = 0; e < pieces.size(); ++e) {
    auto& ps = pieces[e];
    std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.from < b.from; });
    const double len = g.edge(static_cast<EdgeIndex>(e)).length, tol = 1e-12 * len;
    double reach = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].from > reach + tol) labels[e].push_back(0);
      bool merged = false;
      if (i > 0 && ps[i].from <= reach + tol && ps[i - 1].part == ps[i].part && !labels[e].empty() &&
          labels[e].back() == ps[i].part + 1) {
        const Subgraph& part = p.part(ps[i].part);
        merged = part.descendant_of({ps[i - 1].segment, EndSide::To}) == part.descendant_of({ps[i].segment, EndSide::From});
      }
      if (!merged) labels[e].push_back(ps[i].part + 1);
      reach = ps[i].to;
    }
    if (ps.empty() || reach < len - tol) labels[e].push_back(0);
  }
  std::vector<std::vector<int>> blocks(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::map<std::pair<int, int>, int> ids;
    for (const auto& end : g.incidence(static_cast<VertexIndex>(v))) {
      const auto& ps = pieces[end.edge];
      const double len = g.edge(end.edge).length;
      const Piece* at = nullptr;
      if (!ps.empty()) {
        if (end.side == EndSide::From && ps.front().from == 0.0) at = &ps.front();
        if (end.side == EndSide::To && ps.back().to == len) at = &ps.back();
      }
      if (!at) {
        blocks[v].push_back(0);
        continue;
      }
      const Subgraph& part = p.part(at->part);
      int d = part.descendant_of({at->segment, end.side});
      auto [it, fresh] = ids.emplace(std::make_pair(at->part, d), static_cast<int>(ids.size()) + 1);
      blocks[v].push_back(it->second);
    }
  }
  return ConfigurationClass(p.graph_ptr(), p.k(), std::move(labels), std::move(blocks));
}

}  // namespace mgp

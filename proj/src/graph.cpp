#include "mgp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace mgp {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<std::string>> connected_components(const std::vector<std::string>& vertexIds,
                                                           const std::vector<MetricGraph::RawEdge>& edges) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < vertexIds.size(); ++i) index.emplace(vertexIds[i], static_cast<int>(i));
  DisjointSets ds(vertexIds.size());
  for (const auto& e : edges) {
    auto a = index.find(e.u), b = index.find(e.v);
    if (a != index.end() && b != index.end()) ds.unite(a->second, b->second);
  }
  std::map<int, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < vertexIds.size(); ++i) groups[ds.find(static_cast<int>(i))].push_back(vertexIds[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, ids] : groups) out.push_back(std::move(ids));
  return out;
}

MetricGraph::MetricGraph(std::vector<std::string> vertexIds, const std::vector<RawEdge>& edges)
    : vertexIds_(std::move(vertexIds)) {
  if (vertexIds_.empty()) throw InvalidInput("graph has no vertices");
  if (edges.empty()) throw InvalidInput("graph has no edges");
  std::map<std::string, int> vindex;
  for (std::size_t i = 0; i < vertexIds_.size(); ++i) {
    if (!vindex.emplace(vertexIds_[i], static_cast<int>(i)).second)
      throw InvalidInput("duplicate vertex id '" + vertexIds_[i] + "'");
  }
  std::set<std::string> eids;
  for (const auto& raw : edges) {
    if (!eids.insert(raw.id).second) throw InvalidInput("duplicate edge id '" + raw.id + "'");
    auto a = vindex.find(raw.u), b = vindex.find(raw.v);
    if (a == vindex.end()) throw InvalidInput("edge '" + raw.id + "': unknown endpoint '" + raw.u + "'");
    if (b == vindex.end()) throw InvalidInput("edge '" + raw.id + "': unknown endpoint '" + raw.v + "'");
    if (!(raw.length > 0.0) || !std::isfinite(raw.length))
      throw InvalidInput("edge '" + raw.id + "': length must be positive and finite");
    edges_.push_back(Edge{raw.id, a->second, b->second, raw.length});
  }
  auto comps = connected_components(vertexIds_, edges);
  if (comps.size() > 1) {
    std::string msg = "graph is disconnected; components:";
    for (const auto& c : comps) {
      msg += " {";
      for (std::size_t i = 0; i < c.size(); ++i) msg += (i ? "," : "") + c[i];
      msg += "}";
    }
    throw InvalidInput(msg);
  }
  incidence_.assign(vertexIds_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incidence_[edges_[e].u].push_back({static_cast<EdgeIndex>(e), EndSide::From});
    incidence_[edges_[e].v].push_back({static_cast<EdgeIndex>(e), EndSide::To});
    totalLength_ += edges_[e].length;
    maxLength_ = std::max(maxLength_, edges_[e].length);
  }
}

VertexIndex MetricGraph::vertex_index(const std::string& id) const {
  auto it = std::find(vertexIds_.begin(), vertexIds_.end(), id);
  if (it == vertexIds_.end()) throw InvalidInput("unknown vertex id '" + id + "'");
  return static_cast<VertexIndex>(it - vertexIds_.begin());
}

EdgeIndex MetricGraph::edge_index(const std::string& id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return static_cast<EdgeIndex>(e);
  throw InvalidInput("unknown edge id '" + id + "'");
}

VertexIndex MetricGraph::endpoint(EdgeEnd end) const {
  const Edge& e = edges_.at(end.edge);
  return end.side == EndSide::From ? e.u : e.v;
}

int MetricGraph::degree_sum() const { return static_cast<int>(2 * edges_.size()); }

MetricGraph MetricGraph::scaled(double c) const {
  std::vector<RawEdge> raw;
  for (const auto& e : edges_) raw.push_back({e.id, vertexIds_[e.u], vertexIds_[e.v], e.length * c});
  return MetricGraph(vertexIds_, raw);
}

}  // namespace mgp

#include "mgp/quantum_graph.hpp"

#include <algorithm>
#include <cmath>

namespace mgp {

double QuantumGraph::total_length() const {
  double s = 0.0;
  for (const auto& e : edges) s += e.length;
  return s;
}

double QuantumGraph::max_edge_length() const {
  double m = 0.0;
  for (const auto& e : edges) m = std::max(m, e.length);
  return m;
}

bool QuantumGraph::has_dirichlet() const {
  return std::any_of(vertices.begin(), vertices.end(), [](const QuantumVertex& v) { return v.dirichlet; });
}

bool QuantumGraph::has_positive_strength() const {
  return std::any_of(vertices.begin(), vertices.end(), [](const QuantumVertex& v) { return v.strength > 0.0; });
}

void QuantumGraph::check() const {
  if (edges.empty()) throw InvalidInput("quantum graph without edges");
  for (const auto& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(vertices.size()) || e.to >= static_cast<int>(vertices.size()))
      throw InvalidInput("quantum edge with bad endpoint");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw InvalidInput("quantum edge with bad length");
  }
  for (const auto& v : vertices)
    if (!std::isfinite(v.strength) || v.strength < 0.0) throw InvalidInput("vertex strength must be finite and >= 0");
  if (total_length() < 1e-12) throw InvalidInput("domain length below 1e-12");
}

namespace {

QuantumGraph skeleton(const Subgraph& omega) {
  QuantumGraph q;
  q.vertices.resize(omega.descendants().size());
  const auto& segs = omega.segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    QuantumEdge e;
    e.from = omega.descendant_of({static_cast<int>(s), EndSide::From});
    e.to = omega.descendant_of({static_cast<int>(s), EndSide::To});
    e.length = segs[s].length();
    e.parentEdge = segs[s].edge;
    e.parentOffset = segs[s].from;
    q.edges.push_back(e);
  }
  return q;
}

}  // namespace

QuantumGraph robin_graph(const Subgraph& omega, double alpha, BoundaryMode mode) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidInput("alpha must be finite and >= 0");
  QuantumGraph q = skeleton(omega);
  for (const auto& b : omega.boundary()) {
    if (mode == BoundaryMode::EffectiveDegree) {
      q.vertices[b.descendant].strength = alpha * b.effectiveDegree;
    } else {
      const GraphPoint& p = omega.descendants()[b.descendant].point;
      int share = 0;
      for (const auto& c : omega.boundary())
        if (same_point(omega.parent(), omega.descendants()[c.descendant].point, p)) ++share;
      q.vertices[b.descendant].strength = alpha / share;
    }
  }
  return q;
}

QuantumGraph robin_graph(const Subgraph& omega, const std::vector<double>& strengths) {
  QuantumGraph q = skeleton(omega);
  if (strengths.size() != q.vertices.size()) throw InvalidInput("one strength per descendant required");
  for (std::size_t i = 0; i < strengths.size(); ++i) q.vertices[i].strength = strengths[i];
  return q;
}

QuantumGraph dirichlet_graph(const Subgraph& omega) {
  QuantumGraph q = skeleton(omega);
  for (const auto& b : omega.boundary()) q.vertices[b.descendant].dirichlet = true;
  return q;
}

QuantumGraph interval_graph(double length, QuantumVertex left, QuantumVertex right) {
  QuantumGraph q;
  q.vertices = {left, right};
  q.edges.push_back({0, 1, length, -1, 0.0});
  return q;
}

}  // namespace mgp

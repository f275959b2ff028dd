#include "mgp/subgraph.hpp"

#include "mgp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mgp {

namespace {

double snap(double x, double len) {
  const double tol = 1e-12 * len;
  if (std::abs(x) <= tol) return 0.0;
  if (std::abs(x - len) <= tol) return len;
  return x;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

int end_slot(SegmentEnd e) { return 2 * e.segment + (e.side == EndSide::To ? 1 : 0); }

}  // namespace

bool same_point(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b) {
  if (a.is_vertex() != b.is_vertex()) return false;
  if (a.is_vertex()) return a.vertex == b.vertex;
  return a.edge == b.edge && std::abs(a.offset - b.offset) <= 1e-12 * g.edge(a.edge).length;
}

Subgraph::Subgraph(GraphPtr parent, std::vector<Segment> segments, std::vector<Descendant> descendants)
    : parent_(std::move(parent)), segments_(std::move(segments)), descendants_(std::move(descendants)) {
  if (!parent_) throw InvalidInput("subgraph without parent graph");
  const MetricGraph& g = *parent_;
  if (segments_.empty()) throw InvalidInput("subgraph has no segments");
  for (auto& s : segments_) {
    if (s.edge < 0 || s.edge >= static_cast<EdgeIndex>(g.edge_count())) throw InvalidInput("segment on unknown edge");
    const double len = g.edge(s.edge).length;
    s.from = snap(s.from, len);
    s.to = snap(s.to, len);
    if (s.from < 0 || s.to > len || !(s.to > s.from))
      throw InvalidInput("segment on edge '" + g.edge(s.edge).id + "' is not a sub-interval with b > a");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i)
    for (std::size_t j = i + 1; j < segments_.size(); ++j) {
      const auto &a = segments_[i], &b = segments_[j];
      if (a.edge != b.edge) continue;
      double tol = 1e-12 * g.edge(a.edge).length;
      if (std::min(a.to, b.to) - std::max(a.from, b.from) > tol)
        throw InvalidInput("overlapping segments on edge '" + g.edge(a.edge).id + "'");
    }

  endOwner_.assign(2 * segments_.size(), -1);
  for (std::size_t d = 0; d < descendants_.size(); ++d) {
    auto& desc = descendants_[d];
    if (desc.ends.empty()) throw InvalidInput("descendant without segment ends");
    if (desc.ends.front().segment < 0 || desc.ends.front().segment >= static_cast<int>(segments_.size()))
      throw InvalidInput("descendant references unknown segment");
    if (!desc.point.is_vertex() && desc.point.edge < 0) desc.point = point_of(desc.ends.front());
    for (const auto& end : desc.ends) {
      if (end.segment < 0 || end.segment >= static_cast<int>(segments_.size()))
        throw InvalidInput("descendant references unknown segment");
      int slot = end_slot(end);
      if (endOwner_[slot] >= 0) throw InvalidInput("segment end assigned to two descendants");
      endOwner_[slot] = static_cast<int>(d);
      if (!same_point(g, point_of(end), desc.point))
        throw InvalidInput("descendant glues segment ends located at different points");
    }
    desc.point = point_of(desc.ends.front());
  }
  for (int owner : endOwner_)
    if (owner < 0) throw InvalidInput("segment end not assigned to any descendant");

  Dsu dsu(segments_.size());
  for (const auto& desc : descendants_)
    for (const auto& end : desc.ends) dsu.unite(end.segment, desc.ends.front().segment);
  for (std::size_t s = 1; s < segments_.size(); ++s)
    if (dsu.find(static_cast<int>(s)) != dsu.find(0)) throw InvalidInput("subgraph is not connected");

  for (std::size_t d = 0; d < descendants_.size(); ++d) {
    int dOmega = static_cast<int>(descendants_[d].ends.size());
    int dGamma = parent_degree(descendants_[d].point);
    if (dOmega > dGamma) throw InvalidInput("descendant has more ends than the parent point");
    if (dOmega == dGamma) continue;
    boundary_.push_back({static_cast<int>(d), dOmega, dGamma, std::min(dOmega, dGamma - dOmega)});
  }
}

Subgraph Subgraph::maximally_glued(GraphPtr parent, std::vector<Segment> segments) {
  const MetricGraph& g = *parent;
  std::vector<Descendant> desc;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const double len = g.edge(segments[s].edge).length;
    segments[s].from = snap(segments[s].from, len);
    segments[s].to = snap(segments[s].to, len);
    for (EndSide side : {EndSide::From, EndSide::To}) {
      const Segment& seg = segments[s];
      GraphPoint p;
      double x = side == EndSide::From ? seg.from : seg.to;
      if (x == 0.0) {
        p.vertex = g.edge(seg.edge).u;
      } else if (x == len) {
        p.vertex = g.edge(seg.edge).v;
      } else {
        p.edge = seg.edge;
        p.offset = x;
      }
      SegmentEnd end{static_cast<int>(s), side};
      auto it = std::find_if(desc.begin(), desc.end(), [&](const Descendant& d) { return same_point(g, d.point, p); });
      if (it == desc.end())
        desc.push_back({p, {end}});
      else
        it->ends.push_back(end);
    }
  }
  return Subgraph(std::move(parent), std::move(segments), std::move(desc));
}

Subgraph Subgraph::whole(GraphPtr parent) {
  std::vector<Segment> segs;
  for (std::size_t e = 0; e < parent->edge_count(); ++e)
    segs.push_back({static_cast<EdgeIndex>(e), 0.0, parent->edge(static_cast<EdgeIndex>(e)).length});
  return maximally_glued(std::move(parent), std::move(segs));
}

GraphPoint Subgraph::point_of(SegmentEnd end) const {
  const Segment& s = segments_.at(end.segment);
  const Edge& e = parent_->edge(s.edge);
  double x = end.side == EndSide::From ? s.from : s.to;
  GraphPoint p;
  if (x == 0.0)
    p.vertex = e.u;
  else if (x == e.length)
    p.vertex = e.v;
  else {
    p.edge = s.edge;
    p.offset = x;
  }
  return p;
}

int Subgraph::descendant_of(SegmentEnd end) const { return endOwner_.at(end_slot(end)); }

int Subgraph::parent_degree(const GraphPoint& p) const { return p.is_vertex() ? parent_->degree(p.vertex) : 2; }

int boundary_size(const Subgraph& omega, BoundaryMode mode) {
  if (mode == BoundaryMode::EffectiveDegree) {
    int sum = 0;
    for (const auto& b : omega.boundary()) sum += b.effectiveDegree;
    return sum;
  }
  std::vector<GraphPoint> points;
  for (const auto& b : omega.boundary()) {
    const GraphPoint& p = omega.descendants()[b.descendant].point;
    bool seen = std::any_of(points.begin(), points.end(),
                            [&](const GraphPoint& q) { return same_point(omega.parent(), p, q); });
    if (!seen) points.push_back(p);
  }
  return static_cast<int>(points.size());
}

double total_length(const Subgraph& omega) {
  double sum = 0.0;
  for (const auto& s : omega.segments()) sum += s.length();
  return sum;
}

namespace {

void require_single_descendants(const Subgraph& omega) {
  const auto& desc = omega.descendants();
  for (const auto& b : omega.boundary())
    for (std::size_t d = 0; d < desc.size(); ++d)
      if (static_cast<int>(d) != b.descendant &&
          same_point(omega.parent(), desc[d].point, desc[b.descendant].point))
        throw InvalidInput("perimeter needs one descendant per boundary point");
}

double vertex_perimeter_lp(int dGamma, int dOmega) {
  // g_j = f_j + 1 in [0, 2], sum g_j = dGamma.
  double best = 0.0;
  for (double sign : {1.0, -1.0}) {
    LinearProgram<double> lp(dGamma);
    for (int j = 0; j < dOmega; ++j) lp.objective(j) = sign;
    lp.add_row(Sense::Equal, dGamma).setOnes();
    for (int j = 0; j < dGamma; ++j) lp.add_row(Sense::LessEqual, 2.0)(j) = 1.0;
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw SolverFailure("perimeter linear program failed");
    best = std::max(best, sol.value - sign * dOmega);
  }
  return best;
}

}  // namespace

int perimeter(const Subgraph& omega) {
  require_single_descendants(omega);
  return boundary_size(omega, BoundaryMode::EffectiveDegree);
}

double perimeter_oracle(const Subgraph& omega) {
  require_single_descendants(omega);
  double sum = 0.0;
  for (const auto& b : omega.boundary()) sum += vertex_perimeter_lp(b.degreeInGraph, b.degreeInSubgraph);
  return sum;
}

}  // namespace mgp

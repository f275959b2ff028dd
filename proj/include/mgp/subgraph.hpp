#pragma once

#include "mgp/graph.hpp"

#include <optional>

namespace mgp {

enum class BoundaryMode { EffectiveDegree, Count };

/// A vertex of the parent or an interior point of one of its edges.
struct GraphPoint {
  VertexIndex vertex = -1;
  EdgeIndex edge = -1;
  double offset = 0.0;
  bool is_vertex() const { return vertex >= 0; }
};

struct Segment {
  EdgeIndex edge = 0;
  double from = 0.0;
  double to = 0.0;
  double length() const { return to - from; }
};

struct SegmentEnd {
  int segment = 0;
  EndSide side = EndSide::From;
  friend bool operator==(const SegmentEnd&, const SegmentEnd&) = default;
};

/// Vertex of a subgraph: a parent point together with the segment ends glued there.
/// A default point is filled in from the first end.
struct Descendant {
  GraphPoint point;
  std::vector<SegmentEnd> ends;
};

struct BoundaryDescendant {
  int descendant = 0;
  int degreeInSubgraph = 0;
  int degreeInGraph = 0;
  int effectiveDegree = 0;
};

/// Closed connected subgraph with explicit topology at its vertices.
class Subgraph {
public:
  Subgraph(GraphPtr parent, std::vector<Segment> segments, std::vector<Descendant> descendants);

  /// All ends located at the same parent point are glued into one descendant.
  static Subgraph maximally_glued(GraphPtr parent, std::vector<Segment> segments);
  static Subgraph whole(GraphPtr parent);

  const MetricGraph& parent() const { return *parent_; }
  const GraphPtr& parent_ptr() const { return parent_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Descendant>& descendants() const { return descendants_; }
  const std::vector<BoundaryDescendant>& boundary() const { return boundary_; }

  /// Parent point of a segment end.
  GraphPoint point_of(SegmentEnd end) const;
  /// Descendant index that holds the given end.
  int descendant_of(SegmentEnd end) const;
  /// Degree of a parent point in the parent graph (2 for interior points).
  int parent_degree(const GraphPoint& p) const;

private:
  GraphPtr parent_;
  std::vector<Segment> segments_;
  std::vector<Descendant> descendants_;
  std::vector<BoundaryDescendant> boundary_;
  std::vector<int> endOwner_;
};

/// Two points coincide (interior offsets compared up to 1e-12 of the edge length).
bool same_point(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b);

int boundary_size(const Subgraph& omega, BoundaryMode mode = BoundaryMode::EffectiveDegree);
double total_length(const Subgraph& omega);
/// Requires one descendant per parent boundary point.
int perimeter(const Subgraph& omega);
/// Per-vertex linear programs for the total-variation perimeter.
double perimeter_oracle(const Subgraph& omega);

}  // namespace mgp

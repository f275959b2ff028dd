#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgp {

using VertexIndex = int;
using EdgeIndex = int;

/// Raised for malformed inputs (graphs, subgraphs, partitions, classes).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative solver gives up.
class SolverFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class EndSide : unsigned char { From = 0, To = 1 };

struct Edge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;
  double length = 0.0;
  bool is_loop() const { return u == v; }
};

/// One end of a parent edge sitting at a vertex.
struct EdgeEnd {
  EdgeIndex edge = 0;
  EndSide side = EndSide::From;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// Compact connected metric graph. Loops and parallel edges are allowed.
class MetricGraph {
public:
  struct RawEdge {
    std::string id;
    std::string u;
    std::string v;
    double length;
  };

  MetricGraph(std::vector<std::string> vertexIds, const std::vector<RawEdge>& edges);

  std::size_t vertex_count() const { return vertexIds_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_id(VertexIndex v) const { return vertexIds_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  VertexIndex vertex_index(const std::string& id) const;
  EdgeIndex edge_index(const std::string& id) const;

  /// Incident ends in a fixed order (edge index, then From before To).
  const std::vector<EdgeEnd>& incidence(VertexIndex v) const { return incidence_.at(v); }
  int degree(VertexIndex v) const { return static_cast<int>(incidence_.at(v).size()); }
  VertexIndex endpoint(EdgeEnd end) const;

  double total_length() const { return totalLength_; }
  double max_edge_length() const { return maxLength_; }
  int degree_sum() const;

  /// Copy with every length multiplied by c.
  MetricGraph scaled(double c) const;

private:
  std::vector<std::string> vertexIds_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeEnd>> incidence_;
  double totalLength_ = 0.0;
  double maxLength_ = 0.0;
};

using GraphPtr = std::shared_ptr<const MetricGraph>;

inline GraphPtr share(MetricGraph g) { return std::make_shared<const MetricGraph>(std::move(g)); }

/// Connected components as lists of vertex ids (used for diagnostics).
std::vector<std::vector<std::string>> connected_components(const std::vector<std::string>& vertexIds,
                                                           const std::vector<MetricGraph::RawEdge>& edges);

}  // namespace mgp

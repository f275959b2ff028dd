#pragma once

#include "mgp/subgraph.hpp"

#include <vector>

namespace mgp {

/// Vertex condition: delta coupling of given strength, or Dirichlet.
struct QuantumVertex {
  double strength = 0.0;
  bool dirichlet = false;
};

struct QuantumEdge {
  int from = 0;
  int to = 0;
  double length = 0.0;
  EdgeIndex parentEdge = -1;
  double parentOffset = 0.0;
};

/// Solver-level graph: Laplacian with delta/Dirichlet vertex conditions.
struct QuantumGraph {
  std::vector<QuantumVertex> vertices;
  std::vector<QuantumEdge> edges;

  double total_length() const;
  double max_edge_length() const;
  bool has_dirichlet() const;
  bool has_positive_strength() const;
  /// Validates indices, lengths and strengths.
  void check() const;
};

/// Robin vertices get alpha * EffDeg (or alpha split evenly over the
/// descendants of one boundary point in COUNT mode).
QuantumGraph robin_graph(const Subgraph& omega, double alpha, BoundaryMode mode = BoundaryMode::EffectiveDegree);
/// Explicit strength per descendant.
QuantumGraph robin_graph(const Subgraph& omega, const std::vector<double>& strengths);
QuantumGraph dirichlet_graph(const Subgraph& omega);

/// Single interval with conditions at both ends.
QuantumGraph interval_graph(double length, QuantumVertex left, QuantumVertex right);

}  // namespace mgp

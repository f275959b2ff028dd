#pragma once

#include "mgp/subgraph.hpp"

#include <string>
#include <vector>

namespace mgp {

/// k connected subgraphs of one parent with pairwise disjoint interiors.
class Partition {
public:
  Partition(std::vector<Subgraph> parts, bool exhaustive = false);

  int k() const { return static_cast<int>(parts_.size()); }
  const std::vector<Subgraph>& parts() const { return parts_; }
  const Subgraph& part(int i) const { return parts_.at(i); }
  bool exhaustive() const { return exhaustive_; }
  const MetricGraph& graph() const { return parts_.front().parent(); }
  const GraphPtr& graph_ptr() const { return parts_.front().parent_ptr(); }

private:
  std::vector<Subgraph> parts_;
  bool exhaustive_;
};

/// Per-edge segment lengths of a realization, one vector per parent edge.
using SegmentLengths = std::vector<std::vector<double>>;

/// Combinatorial type of a partition.
///
/// labels[e] lists the parts met along edge e from u to v (0 = unassigned).
/// blocks[v][j] is the descendant block of the j-th incident end of v
/// (graph incidence order), 0 for unassigned ends. Block ids are renumbered
/// by first occurrence. Interior cut points are never glued.
class ConfigurationClass {
public:
  static constexpr int Unassigned = 0;

  ConfigurationClass(GraphPtr graph, int k, std::vector<std::vector<int>> labels,
                     std::vector<std::vector<int>> blocks);

  /// All ends of one part at one vertex glued together.
  static ConfigurationClass coarsest(GraphPtr graph, int k, std::vector<std::vector<int>> labels);

  int k() const { return k_; }
  const MetricGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  const std::vector<std::vector<int>>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int cuts(EdgeIndex e) const { return static_cast<int>(labels_.at(e).size()) - 1; }
  int max_cuts() const;
  bool has_unassigned() const;

  std::vector<int> encoding() const;
  /// Minimal encoding over part relabelings and loop reversals.
  std::vector<int> canonical_encoding() const;
  ConfigurationClass canonical() const;
  std::string id() const;

  /// Boundary size of every part; constant over the class.
  std::vector<int> boundary_sizes(BoundaryMode mode) const;
  /// Equal segment lengths on every edge.
  SegmentLengths nominal_lengths() const;

  friend bool operator==(const ConfigurationClass& a, const ConfigurationClass& b) {
    return a.canonical_encoding() == b.canonical_encoding();
  }

private:
  GraphPtr graph_;
  int k_;
  std::vector<std::vector<int>> labels_;
  std::vector<std::vector<int>> blocks_;
};

std::string encoding_id(const std::vector<int>& encoding, const MetricGraph& g);

/// Realization of a class; zero-length segments are merged away.
Partition realize(const ConfigurationClass& cls, const SegmentLengths& lengths);

/// Class of a concrete partition.
ConfigurationClass class_of(const Partition& p);

}  // namespace mgp

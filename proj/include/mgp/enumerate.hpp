#pragma once

#include "mgp/partition.hpp"

#include <functional>
#include <optional>
#include <limits>

namespace mgp {

struct EnumerationCaps {
  int maxCutsPerEdge = 2;
  /// Stop after this many emitted classes (reported as truncation).
  std::size_t maxClasses = 50'000'000;
};

struct EnumerationReport {
  std::size_t emitted = 0;
  std::size_t candidates = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

/// Return false to stop the enumeration.
using ClassVisitor = std::function<bool(const ConfigurationClass&)>;

/// Every class up to part relabeling (and loop reversal), all vertex gluings,
/// in a deterministic order. Exponential; meant for small graphs and caps.
EnumerationReport enumerate_configuration_classes(const GraphPtr& graph, int k, const EnumerationCaps& caps,
                                                  bool exhaustive, const ClassVisitor& visit);

struct ReducedEnumerationOptions {
  bool exhaustive = false;
  /// Skip label sequences with an interior segment on edges where 2/length >= bound.
  double isolatedBound = std::numeric_limits<double>::infinity();
};

/// Classes that can attain a Cheeger-type min-max: coarsest gluing, no two
/// consecutive equal labels, unassigned pieces only as whole edges, one
/// representative per orbit of graph automorphisms and part relabelings.
EnumerationReport enumerate_reduced_classes(const GraphPtr& graph, int k, const EnumerationCaps& caps,
                                            const ReducedEnumerationOptions& opts, const ClassVisitor& visit);

/// Vertex permutations preserving the multiset of edge lengths between every vertex pair.
std::vector<std::vector<VertexIndex>> vertex_automorphisms(const MetricGraph& g);

/// Same class up to graph automorphisms and part relabeling.
bool equivalent_classes(const ConfigurationClass& a, const ConfigurationClass& b);

}  // namespace mgp

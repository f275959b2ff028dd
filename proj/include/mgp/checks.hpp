#pragma once

#include "mgp/graph.hpp"
#include "mgp/subgraph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mgp {

struct NamedGraph {
  std::string name;
  GraphPtr graph;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Smallest slack seen over all cases (negative means violated).
  double worstMargin = 0.0;
  double seconds = 0.0;
  std::vector<std::string> messages;
  bool ok() const { return cases > 0 && failures == 0; }
};

struct CheckOptions {
  std::uint64_t seed = 1;
  /// Subgraphs drawn in total, spread evenly over the corpus.
  std::size_t samples = 20;
  std::vector<double> alphaGrid{0.0, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0};
  /// Slack applied to every inequality, relative to the values compared.
  double slack = 1e-9;
  int jobs = 1;
};

struct CheckReport {
  std::vector<SuiteResult> suites;
  std::size_t sampledSubgraphs = 0;
  double seconds = 0.0;
  bool ok() const;
};

/// Connected parts of random realizations of reduced 2-part classes; every
/// sample has a nonempty boundary and one descendant per boundary point.
std::vector<Subgraph> sample_subgraphs(const GraphPtr& graph, std::size_t count, std::uint64_t seed);

/// Runs every property suite on the corpus.
CheckReport run_property_suites(const std::vector<NamedGraph>& corpus, const CheckOptions& opts = {});

}  // namespace mgp

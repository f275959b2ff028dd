#pragma once

#include "mgp/io.hpp"

#include <string>

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(MGP_DATA_DIR) + "/" + name; }

inline mgp::GraphPtr load(const std::string& name) { return mgp::share(mgp::parse_graph_file(data(name))); }

inline mgp::Segment whole_edge(const mgp::MetricGraph& g, const std::string& id) {
  auto e = g.edge_index(id);
  return {e, 0.0, g.edge(e).length};
}

/// Pumpkin of the first figure, glued at both v and w.
inline mgp::Subgraph fig1_pumpkin(const mgp::GraphPtr& g) {
  return mgp::Subgraph::maximally_glued(
      g, {whole_edge(*g, "p1"), whole_edge(*g, "p2"), whole_edge(*g, "p3"), whole_edge(*g, "p4")});
}

}  // namespace fixtures

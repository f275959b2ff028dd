#pragma once

#include "mgp/partition.hpp"
#include "mgp/spectral.hpp"

#include <json.hpp>

#include <string>

namespace mgp {

/// Graph document: {"vertices": [ids], "edges": [{"id", "u", "v", "length"}]}.
MetricGraph parse_graph_text(const std::string& text, const std::string& source = "<input>");
MetricGraph parse_graph_file(const std::string& path);
nlohmann::json graph_to_json(const MetricGraph& g);

/// {"segments": [{"edge", "from", "to"}], "descendants": [{"ends": [[segment, "from"|"to"], ...]}]}
/// or "gluing": "maximal" in place of "descendants".
Subgraph parse_subgraph(const nlohmann::json& doc, const GraphPtr& graph);
nlohmann::json subgraph_to_json(const Subgraph& omega);
nlohmann::json partition_to_json(const Partition& p);
nlohmann::json class_to_json(const ConfigurationClass& cls);

/// 17 significant digits; "inf" / "nan" spelled out.
std::string format_double(double x);
nlohmann::json json_number(double x);

std::string read_text_file(const std::string& path);

}  // namespace mgp

#include "mgp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mgp {

using nlohmann::json;

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string id_of(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InvalidInput(field + ": expected a string or integer id");
}

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(field + ": missing field '" + key + "'");
  return obj.at(key);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MetricGraph parse_graph_text(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(source + ": malformed JSON at " + location(text, e.byte) + ": " + e.what());
  }
  const json& vs = require(doc, "vertices", source);
  const json& es = require(doc, "edges", source);
  if (!vs.is_array()) throw InvalidInput(source + ": field 'vertices' must be an array");
  if (!es.is_array()) throw InvalidInput(source + ": field 'edges' must be an array");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < vs.size(); ++i) ids.push_back(id_of(vs[i], source + ": vertices[" + std::to_string(i) + "]"));
  std::vector<MetricGraph::RawEdge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string field = source + ": edges[" + std::to_string(i) + "]";
    const json& e = es[i];
    if (!e.is_object()) throw InvalidInput(field + ": expected an object");
    const json& len = require(e, "length", field);
    if (!len.is_number()) throw InvalidInput(field + ".length: expected a number");
    edges.push_back({id_of(require(e, "id", field), field + ".id"), id_of(require(e, "u", field), field + ".u"),
                     id_of(require(e, "v", field), field + ".v"), len.get<double>()});
  }
  try {
    return MetricGraph(std::move(ids), edges);
  } catch (const InvalidInput& e) {
    throw InvalidInput(source + ": " + e.what());
  }
}

MetricGraph parse_graph_file(const std::string& path) { return parse_graph_text(read_text_file(path), path); }

json graph_to_json(const MetricGraph& g) {
  json doc;
  doc["vertices"] = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back(g.vertex_id(static_cast<VertexIndex>(v)));
  doc["edges"] = json::array();
  for (const auto& e : g.edges())
    doc["edges"].push_back({{"id", e.id}, {"u", g.vertex_id(e.u)}, {"v", g.vertex_id(e.v)}, {"length", e.length}});
  return doc;
}

Subgraph parse_subgraph(const json& doc, const GraphPtr& graph) {
  const std::string where = "subgraph";
  const json& segs = require(doc, "segments", where);
  if (!segs.is_array()) throw InvalidInput("subgraph.segments must be an array");
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string field = "subgraph.segments[" + std::to_string(i) + "]";
    const json& s = segs[i];
    EdgeIndex e = graph->edge_index(id_of(require(s, "edge", field), field + ".edge"));
    const json& from = require(s, "from", field);
    const json& to = require(s, "to", field);
    if (!from.is_number() || !to.is_number()) throw InvalidInput(field + ": from/to must be numbers");
    segments.push_back({e, from.get<double>(), to.get<double>()});
  }
  if (doc.contains("gluing")) {
    if (doc.at("gluing") != "maximal") throw InvalidInput("subgraph.gluing: only \"maximal\" is recognised");
    if (doc.contains("descendants")) throw InvalidInput("subgraph: give either gluing or descendants");
    return Subgraph::maximally_glued(graph, std::move(segments));
  }
  const json& ds = require(doc, "descendants", where);
  if (!ds.is_array()) throw InvalidInput("subgraph.descendants must be an array");
  std::vector<Descendant> desc;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::string field = "subgraph.descendants[" + std::to_string(i) + "]";
    Descendant d;
    for (const json& end : require(ds[i], "ends", field)) {
      if (!end.is_array() || end.size() != 2 || !end[0].is_number_integer() || !end[1].is_string())
        throw InvalidInput(field + ".ends: expected [segment index, \"from\"|\"to\"]");
      std::string side = end[1].get<std::string>();
      if (side != "from" && side != "to") throw InvalidInput(field + ".ends: side must be \"from\" or \"to\"");
      d.ends.push_back({end[0].get<int>(), side == "from" ? EndSide::From : EndSide::To});
    }
    desc.push_back(std::move(d));
  }
  return Subgraph(graph, std::move(segments), std::move(desc));
}

json subgraph_to_json(const Subgraph& omega) {
  const MetricGraph& g = omega.parent();
  json doc;
  doc["segments"] = json::array();
  for (const auto& s : omega.segments())
    doc["segments"].push_back({{"edge", g.edge(s.edge).id}, {"from", json_number(s.from)}, {"to", json_number(s.to)}});
  doc["descendants"] = json::array();
  for (const auto& d : omega.descendants()) {
    json entry;
    if (d.point.is_vertex()) {
      entry["vertex"] = g.vertex_id(d.point.vertex);
    } else {
      entry["edge"] = g.edge(d.point.edge).id;
      entry["offset"] = json_number(d.point.offset);
    }
    entry["ends"] = json::array();
    for (const auto& e : d.ends) entry["ends"].push_back({e.segment, e.side == EndSide::From ? "from" : "to"});
    doc["descendants"].push_back(entry);
  }
  doc["length"] = json_number(total_length(omega));
  doc["boundary_effective_degree"] = boundary_size(omega, BoundaryMode::EffectiveDegree);
  doc["boundary_count"] = boundary_size(omega, BoundaryMode::Count);
  return doc;
}

json class_to_json(const ConfigurationClass& cls) {
  const MetricGraph& g = cls.graph();
  json doc;
  doc["id"] = cls.id();
  doc["k"] = cls.k();
  json labels = json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) labels[g.edge(static_cast<EdgeIndex>(e)).id] = cls.labels()[e];
  doc["labels"] = labels;
  json blocks = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) blocks[g.vertex_id(static_cast<VertexIndex>(v))] = cls.blocks()[v];
  doc["blocks"] = blocks;
  return doc;
}

json partition_to_json(const Partition& p) {
  json doc;
  doc["exhaustive"] = p.exhaustive();
  doc["parts"] = json::array();
  for (const auto& part : p.parts()) doc["parts"].push_back(subgraph_to_json(part));
  doc["class"] = class_to_json(class_of(p));
  return doc;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace mgp

// mgpart: command-line front end for the metric graph partition library.

#include "mgp/checks.hpp"
#include "mgp/io.hpp"
#include "mgp/robin_opt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mgp;
using nlohmann::json;

namespace {

struct Common {
  int jobs = 1;
  std::string jsonPath;
  std::string csvPath;
};

int env_jobs() {
  const char* v = std::getenv("QC_JOBS");
  if (!v || !*v) return 1;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw InvalidInput(std::string("QC_JOBS is not an integer: ") + v);
  }
}

BoundaryMode parse_mode(const std::string& s) {
  if (s == "effective") return BoundaryMode::EffectiveDegree;
  if (s == "count") return BoundaryMode::Count;
  throw InvalidInput("unknown boundary mode '" + s + "' (effective|count)");
}

const char* mode_name(BoundaryMode m) { return m == BoundaryMode::Count ? "count" : "effective"; }

// a:b:n, n points log-spaced from a to b
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw InvalidInput("grid must look like a:b:n");
  double a = std::stod(parts[0]), b = std::stod(parts[1]);
  int n = std::stoi(parts[2]);
  if (!(a > 0) || !(b > 0) || n < 1) throw InvalidInput("grid needs a, b > 0 and n >= 1");
  if (n == 1) return {a};
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  g.back() = b;
  return g;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out += c;
    } else {
      out += '"';
      for (char ch : c) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out += '"';
    }
  }
  return out + "\n";
}

std::string fmt(double x) { return format_double(x); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

void emit(const Common& c, const json& doc, const std::string& csv) {
  if (c.jsonPath.empty())
    std::cout << doc.dump(2) << "\n";
  else
    write_text(c.jsonPath, doc.dump(2) + "\n");
  if (!c.csvPath.empty()) write_text(c.csvPath, csv);
}

GraphPtr load_graph(const std::string& path) { return share(parse_graph_file(path)); }

json lengths_json(const MetricGraph& g, const SegmentLengths& len) {
  json out = json::object();
  for (std::size_t e = 0; e < len.size(); ++e) {
    json row = json::array();
    for (double x : len[e]) row.push_back(json_number(x));
    out[g.edge(static_cast<EdgeIndex>(e)).id] = row;
  }
  return out;
}

json enumeration_json(const EnumerationReport& r) {
  return {{"emitted", r.emitted}, {"candidates", r.candidates}, {"truncated", r.truncated}, {"warnings", r.warnings}};
}

json cheeger_json(const CheegerResult& r) {
  json doc;
  doc["value"] = json_number(r.value);
  doc["mode"] = mode_name(r.mode);
  if (r.p) doc["p"] = *r.p;
  doc["argmin_class"] = r.argminClass;
  if (r.argmin) doc["argmin"] = partition_to_json(*r.argmin);
  json caps = json::array();
  for (double v : r.valueByCap) caps.push_back(json_number(v));
  doc["value_by_cap"] = caps;
  doc["cap_stable"] = r.capStable;
  doc["classes"] = r.perClass.size();
  doc["enumeration"] = enumeration_json(r.enumeration);
  doc["warnings"] = r.warnings;
  return doc;
}

std::string cheeger_csv(const CheegerResult& r) {
  std::string out = csv_row({"class_id", "max_cuts", "value", "pruned"});
  for (const auto& row : r.perClass)
    out += csv_row({row.id, std::to_string(row.maxCuts), fmt(row.value), row.pruned ? "1" : "0"});
  return out;
}

json spectral_json(const SpectralPartitionResult& r, const MetricGraph& g) {
  json doc;
  doc["target"] = r.target.is_dirichlet() ? json("dirichlet") : json({{"alpha", *r.target.alpha}, {"mode", mode_name(r.target.mode)}});
  doc["value"] = json_number(r.value);
  doc["argmin_row"] = r.argminRow;
  doc["argmin_class"] = r.argminClass;
  if (r.argmin) doc["argmin"] = partition_to_json(*r.argmin);
  doc["argmin_lengths"] = lengths_json(g, r.argminLengths);
  doc["iterations"] = r.iterations;
  doc["restarts"] = r.restarts;
  doc["spread"] = json_number(r.spread);
  doc["classes"] = r.perClass.size();
  doc["enumeration"] = enumeration_json(r.enumeration);
  doc["warnings"] = r.warnings;
  return doc;
}

std::string spectral_csv(const SpectralPartitionResult& r) {
  std::string out = csv_row({"class_id", "max_cuts", "surrogate", "minimized", "value", "spread", "converged"});
  for (const auto& row : r.perClass)
    out += csv_row({row.id, std::to_string(row.maxCuts), fmt(row.surrogate), row.minimized ? "1" : "0",
                    row.minimized ? fmt(row.result.value) : "", row.minimized ? fmt(row.result.spread) : "",
                    row.minimized ? (row.result.converged ? "1" : "0") : ""});
  return out;
}

struct SpectralFlags {
  int k = 2;
  int restarts = 4;
  int maxIterations = 500;
  std::uint64_t seed = 1;
  std::size_t shortlist = 12;
  int maxCuts = 2;
  bool exhaustive = false;
  std::string method = "secular";

  void add(CLI::App* app) {
    app->add_option("--k", k, "number of parts")->required()->check(CLI::Range(1, 64));
    app->add_option("--restarts", restarts, "starts per class")->check(CLI::PositiveNumber);
    app->add_option("--max-iterations", maxIterations, "sweeps per start")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "seed for random restarts");
    app->add_option("--shortlist", shortlist, "classes fully optimized")->check(CLI::PositiveNumber);
    app->add_option("--max-cuts", maxCuts, "cut points per edge")->check(CLI::Range(0, 8));
    app->add_flag("--exhaustive", exhaustive, "parts must cover the graph");
    app->add_option("--method", method, "secular|mesh")->check(CLI::IsMember({"secular", "mesh"}));
  }

  SpectralOptions options(int jobs) const {
    SpectralOptions o;
    o.restarts = restarts;
    o.maxIterations = maxIterations;
    o.seed = seed;
    o.shortlist = shortlist;
    o.caps.maxCutsPerEdge = maxCuts;
    o.exhaustive = exhaustive;
    o.jobs = jobs;
    o.method = method == "mesh" ? Method::Mesh : Method::Secular;
    return o;
  }
};

std::vector<NamedGraph> default_corpus() {
  std::vector<NamedGraph> corpus;
  for (std::string name : {"fig1", "fig7", "star3", "lasso", "path2"})
    corpus.push_back({name, load_graph(std::string(MGP_DATA_DIR) + "/" + name + ".json")});
  return corpus;
}

void error_record(const char* type, const std::string& message) {
  std::cerr << json({{"error", {{"type", type}, {"message", message}}}}).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cheeger constants and spectral minimal partitions of metric graphs"};
  app.require_subcommand(1);
  Common common;
  common.jobs = 1;
  std::string graphPath;
  std::string modeName = "effective";

  auto add_common = [&](CLI::App* sub, bool needsGraph = true) {
    if (needsGraph) sub->add_option("graph", graphPath, "graph JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--jobs", common.jobs, "worker threads (0 = all cores; default QC_JOBS or 1)");
    sub->add_option("--json", common.jsonPath, "write the JSON result here instead of stdout");
    sub->add_option("--csv", common.csvPath, "write the CSV table here");
  };

  // eig
  auto* eig = app.add_subcommand("eig", "first eigenvalue of a subgraph");
  add_common(eig);
  std::string subgraphPath, eigMethod = "secular";
  std::optional<double> alpha;
  bool dirichlet = false, eigenfunction = false;
  double tol = 1e-10;
  eig->add_option("--subgraph", subgraphPath, "subgraph JSON file (default: whole graph)")->check(CLI::ExistingFile);
  eig->add_option("--alpha", alpha, "Robin coupling")->check(CLI::NonNegativeNumber);
  eig->add_flag("--dirichlet", dirichlet, "Dirichlet at boundary points");
  eig->add_option("--mode", modeName, "effective|count");
  eig->add_option("--method", eigMethod, "secular|mesh")->check(CLI::IsMember({"secular", "mesh"}));
  eig->add_option("--tol", tol, "eigenvalue tolerance")->check(CLI::PositiveNumber);
  eig->add_flag("--eigenfunction", eigenfunction, "write eigenfunction samples to --csv");

  // cheeger
  auto* cheeger = app.add_subcommand("cheeger", "k-Cheeger constant");
  add_common(cheeger);
  int k = 2, maxCuts = 2;
  bool exhaustive = false, variant = false;
  std::optional<double> pnorm;
  cheeger->add_option("--k", k, "number of parts")->required()->check(CLI::Range(1, 64));
  cheeger->add_option("--mode", modeName, "effective|count");
  cheeger->add_option("--p", pnorm, "p-norm exponent (>= 1)");
  cheeger->add_option("--max-cuts", maxCuts, "cut points per edge")->check(CLI::Range(0, 8));
  cheeger->add_flag("--exhaustive", exhaustive, "parts must cover the graph");
  cheeger->add_flag("--variant", variant, "also compute inf max h1");

  // h1
  auto* h1cmd = app.add_subcommand("h1", "Cheeger constant of a subgraph and calibrability");
  add_common(h1cmd);
  h1cmd->add_option("--subgraph", subgraphPath, "subgraph JSON file")->required()->check(CLI::ExistingFile);

  // robin-partition
  auto* robin = app.add_subcommand("robin-partition", "Robin spectral minimal partition");
  add_common(robin);
  SpectralFlags robinFlags;
  robinFlags.add(robin);
  std::string gridSpec;
  auto* alphaOpt = robin->add_option("--alpha", alpha, "Robin coupling")->check(CLI::PositiveNumber);
  auto* gridOpt = robin->add_option("--grid", gridSpec, "a:b:n log grid; reports monotonicity and Lipschitz checks");
  alphaOpt->excludes(gridOpt);
  robin->add_option("--mode", modeName, "effective|count");

  // dirichlet-partition
  auto* dir = app.add_subcommand("dirichlet-partition", "Dirichlet spectral minimal partition");
  add_common(dir);
  SpectralFlags dirFlags;
  dirFlags.add(dir);

  // limit-study
  auto* limit = app.add_subcommand("limit-study", "Robin optimum along an alpha grid towards 0 or infinity");
  add_common(limit);
  SpectralFlags limitFlags;
  limitFlags.add(limit);
  std::string direction = "zero";
  limit->add_option("--direction", direction, "zero|infinity")->check(CLI::IsMember({"zero", "infinity"}));
  limit->add_option("--grid", gridSpec, "a:b:n log grid (default 1e-1:1e-4:4 or 1:1e4:5)");

  // check
  auto* check = app.add_subcommand("check", "property suites on a graph corpus");
  add_common(check, false);
  std::vector<std::string> corpusPaths;
  CheckOptions checkOpts;
  check->add_option("graphs", corpusPaths, "graph files (default: bundled corpus)")->check(CLI::ExistingFile);
  check->add_option("--samples", checkOpts.samples, "sampled subgraphs")->check(CLI::PositiveNumber);
  check->add_option("--seed", checkOpts.seed, "sampling seed");

  try {
    common.jobs = env_jobs();
  } catch (const InvalidInput& e) {
    error_record("invalid_input", e.what());
    return 2;
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const BoundaryMode mode = parse_mode(modeName);
    if (*eig) {
      auto g = load_graph(graphPath);
      Subgraph omega = subgraphPath.empty() ? Subgraph::whole(g) : parse_subgraph(json::parse(read_text_file(subgraphPath)), g);
      if (dirichlet == alpha.has_value()) throw InvalidInput("give exactly one of --alpha and --dirichlet");
      Method m = eigMethod == "mesh" ? Method::Mesh : Method::Secular;
      SpectralResult r;
      if (dirichlet) {
        r = dirichlet_lambda1(omega, m, tol);
      } else {
        RobinProblem p{omega, *alpha, mode, {}};
        r = robin_lambda1(p, m, tol);
      }
      if (eigenfunction) {
        if (common.csvPath.empty()) throw InvalidInput("--eigenfunction needs --csv");
        if (m != Method::Secular) throw InvalidInput("eigenfunction samples come from the secular solver");
        QuantumGraph q = dirichlet ? dirichlet_graph(omega) : robin_graph(omega, *alpha, mode);
        SolverOptions so;
        so.tol = tol;
        so.eigenfunction = true;
        auto full = ground_state(q, so);
        std::string csv = csv_row({"edge", "offset", "value"});
        for (const auto& s : full.eigenfunctionSamples)
          csv += csv_row({g->edge(s.edge).id, fmt(s.offset), fmt(s.value)});
        write_text(common.csvPath, csv);
      }
      std::cout << fmt(r.lambda1) << ',' << (m == Method::Mesh ? "mesh" : "secular") << ',' << fmt(r.errorEstimate) << "\n";
      if (!common.jsonPath.empty())
        write_text(common.jsonPath, json({{"lambda1", json_number(r.lambda1)},
                                          {"method", m == Method::Mesh ? "mesh" : "secular"},
                                          {"error_estimate", json_number(r.errorEstimate)},
                                          {"subgraph", subgraph_to_json(omega)}})
                                        .dump(2) + "\n");
    } else if (*cheeger) {
      auto g = load_graph(graphPath);
      CheegerOptions o;
      o.mode = mode;
      o.exhaustive = exhaustive;
      o.p = pnorm;
      o.caps.maxCutsPerEdge = maxCuts;
      o.jobs = common.jobs;
      auto r = cheeger_constant(g, k, o);
      json doc = cheeger_json(r);
      if (variant) {
        auto v = cheeger_variant(g, k, o.caps, common.jobs);
        doc["variant"] = {{"value", json_number(v.value)}, {"argmin_class", v.argminClass}, {"evaluated", v.evaluated},
                          {"warnings", v.warnings}};
      }
      emit(common, doc, cheeger_csv(r));
    } else if (*h1cmd) {
      auto g = load_graph(graphPath);
      Subgraph omega = parse_subgraph(json::parse(read_text_file(subgraphPath)), g);
      auto r = h1(omega);
      json doc{{"value", json_number(r.value)},
               {"ratio", json_number(boundary_size(omega) / total_length(omega))},
               {"calibrable", r.calibrable},
               {"subsets", r.subsets}};
      if (r.argmin) doc["argmin"] = subgraph_to_json(*r.argmin);
      emit(common, doc, csv_row({"value", "calibrable"}) + csv_row({fmt(r.value), r.calibrable ? "1" : "0"}));
    } else if (*robin) {
      auto g = load_graph(graphPath);
      auto o = robinFlags.options(common.jobs);
      if (!gridSpec.empty()) {
        auto table = alpha_monotonicity_check(g, robinFlags.k, parse_grid(gridSpec), o);
        json rows = json::array();
        std::string csv = csv_row({"alpha", "Lambda", "class_id", "slope", "increase", "increasing", "lipschitz"});
        for (const auto& r : table.rows) {
          rows.push_back({{"alpha", r.alpha}, {"value", json_number(r.value)}, {"class_id", r.classId},
                          {"slope", json_number(r.slope)}, {"increase", json_number(r.increase)},
                          {"increasing", r.increasing}, {"lipschitz", r.lipschitz}});
          csv += csv_row({fmt(r.alpha), fmt(r.value), r.classId, fmt(r.slope), fmt(r.increase), r.increasing ? "1" : "0",
                          r.lipschitz ? "1" : "0"});
        }
        emit(common, {{"lipschitz_constant", table.lipschitz}, {"ok", table.ok}, {"violations", table.violations},
                      {"rows", rows}},
             csv);
      } else {
        if (!alpha) throw InvalidInput("robin-partition needs --alpha or --grid");
        auto r = robin_minimal_partition(g, robinFlags.k, *alpha, o, mode);
        emit(common, spectral_json(r, *g), spectral_csv(r));
      }
    } else if (*dir) {
      auto g = load_graph(graphPath);
      auto r = dirichlet_minimal_partition(g, dirFlags.k, dirFlags.options(common.jobs));
      emit(common, spectral_json(r, *g), spectral_csv(r));
    } else if (*limit) {
      auto g = load_graph(graphPath);
      const bool zero = direction == "zero";
      auto grid = parse_grid(gridSpec.empty() ? (zero ? "1e-1:1e-4:4" : "1:1e4:5") : gridSpec);
      auto s = limit_study(g, limitFlags.k, zero ? LimitDirection::ToZero : LimitDirection::ToInfinity, grid,
                           limitFlags.options(common.jobs));
      json rows = json::array();
      std::string csv = csv_row({"alpha", "Lambda", "Lambda_over_alpha", "class_id", "partition_distance"});
      for (const auto& r : s.rows) {
        rows.push_back({{"alpha", r.alpha},
                        {"value", json_number(r.value)},
                        {"value_over_alpha", json_number(r.valueOverAlpha)},
                        {"class_id", r.classId},
                        {"partition_distance", json_number(r.distance)},
                        {"matches_reference", r.matchesReference},
                        {"smallest_part", json_number(r.smallestPart)},
                        {"lower_bound_over_alpha", json_number(r.lowerBoundOverAlpha)}});
        csv += csv_row({fmt(r.alpha), fmt(r.value), fmt(r.valueOverAlpha), r.classId, fmt(r.distance)});
      }
      json doc{{"direction", direction},
               {"reference_value", json_number(s.referenceValue)},
               {"reference_class", s.referenceClass},
               {"rows", rows},
               {"warnings", s.warnings}};
      if (s.cheeger) doc["cheeger"] = cheeger_json(*s.cheeger);
      if (s.dirichlet) doc["dirichlet"] = spectral_json(*s.dirichlet, *g);
      emit(common, doc, csv);
    } else if (*check) {
      std::vector<NamedGraph> corpus;
      if (corpusPaths.empty()) {
        corpus = default_corpus();
      } else {
        for (const auto& p : corpusPaths) corpus.push_back({std::filesystem::path(p).stem().string(), load_graph(p)});
      }
      checkOpts.jobs = common.jobs;
      auto report = run_property_suites(corpus, checkOpts);
      json suites = json::array();
      std::string csv = csv_row({"suite", "cases", "failures", "worst_margin"});
      for (const auto& s : report.suites) {
        suites.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"ok", s.ok()},
                          {"worst_margin", json_number(s.worstMargin)}, {"seconds", s.seconds},
                          {"messages", s.messages}});
        csv += csv_row({s.name, std::to_string(s.cases), std::to_string(s.failures), fmt(s.worstMargin)});
      }
      emit(common, {{"ok", report.ok()}, {"sampled_subgraphs", report.sampledSubgraphs}, {"seconds", report.seconds},
                    {"suites", suites}},
           csv);
      return report.ok() ? 0 : 4;
    }
  } catch (const InvalidInput& e) {
    error_record("invalid_input", e.what());
    return 2;
  } catch (const SolverFailure& e) {
    error_record("solver_failure", e.what());
    return 3;
  } catch (const std::exception& e) {
    error_record("error", e.what());
    return 1;
  }
  return 0;
}

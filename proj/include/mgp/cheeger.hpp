#pragma once

#include "mgp/enumerate.hpp"

#include <optional>

namespace mgp {

/// max_i |dOmega_i| / |Omega_i|; +inf if a part has zero length.
double cheeger_energy(const Partition& p, BoundaryMode mode = BoundaryMode::EffectiveDegree);
/// p-norm of the ratio vector, p >= 1.
double cheeger_energy_p(const Partition& p, double exponent, BoundaryMode mode = BoundaryMode::EffectiveDegree);

struct ClassOptimum {
  double value = 0.0;  ///< +inf when no realization keeps every part positive
  SegmentLengths lengths;
};

/// Exact min-max over the closure of the class: maximize s with L_i >= c_i s.
ClassOptimum class_optimum(const ConfigurationClass& cls, BoundaryMode mode = BoundaryMode::EffectiveDegree);
ClassOptimum class_optimum(const ConfigurationClass& cls, const std::vector<int>& boundary);
/// p-norm energy over the class (convex; projected gradient from `start`, or the LP point).
ClassOptimum class_optimum_p(const ConfigurationClass& cls, double exponent,
                             BoundaryMode mode = BoundaryMode::EffectiveDegree,
                             const SegmentLengths* start = nullptr);

struct CheegerOptions {
  BoundaryMode mode = BoundaryMode::EffectiveDegree;
  bool exhaustive = false;
  std::optional<double> p;
  EnumerationCaps caps;
  int jobs = 1;
};

struct ClassRow {
  std::string id;
  int maxCuts = 0;
  std::vector<int> boundary;
  double value = 0.0;
  /// Lower bound used for pruning (p-norm runs only skip classes whose max-energy optimum is too large).
  double lowerBound = 0.0;
  bool pruned = false;
  SegmentLengths lengths;
};

struct CheegerResult {
  double value = 0.0;
  std::optional<Partition> argmin;
  std::string argminClass;
  std::vector<ClassRow> perClass;
  BoundaryMode mode = BoundaryMode::EffectiveDegree;
  std::optional<double> p;
  /// Optimum restricted to classes with at most c cuts per edge, c = 0..cap.
  std::vector<double> valueByCap;
  /// The optimum did not change between the last two cap levels.
  bool capStable = false;
  EnumerationReport enumeration;
  std::vector<std::string> warnings;
};

CheegerResult cheeger_constant(const GraphPtr& graph, int k, const CheegerOptions& opts = {});

struct H1Result {
  double value = 0.0;
  std::optional<Subgraph> argmin;
  std::size_t subsets = 0;
  bool calibrable = false;
};

/// inf |dE|/|E| over connected E inside omega, boundary measured in the parent graph.
H1Result h1(const Subgraph& omega);

struct VariantResult {
  double value = 0.0;
  std::string argminClass;
  std::size_t evaluated = 0;
  std::vector<std::string> warnings;
};

/// inf over non-exhaustive k-partitions of max_i h1(Omega_i).
VariantResult cheeger_variant(const GraphPtr& graph, int k, const EnumerationCaps& caps = {}, int jobs = 1);

}  // namespace mgp

#pragma once

#include "mgp/quantum_graph.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mgp {

enum class Method { Secular, Mesh };

struct EigenSample {
  EdgeIndex edge = -1;  ///< parent edge (or quantum edge index when the graph has no parent)
  double offset = 0.0;
  double value = 0.0;
};

struct SpectralResult {
  double lambda1 = 0.0;
  Method method = Method::Secular;
  double errorEstimate = 0.0;
  std::vector<EigenSample> eigenfunctionSamples;
};

struct SolverOptions {
  Method method = Method::Secular;
  double tol = 1e-10;
  /// Also stop once the bracket is below relTol * lambda.
  double relTol = 1e-13;
  bool eigenfunction = false;
  int samplesPerEdge = 9;
  double meshDensity = 64.0;
};

/// Smallest eigenvalue of the Laplacian on a quantum graph.
SpectralResult ground_state(const QuantumGraph& q, const SolverOptions& opts = {});

struct RobinProblem {
  Subgraph domain;
  double alpha = 0.0;
  BoundaryMode mode = BoundaryMode::EffectiveDegree;
  /// Optional strength per descendant; overrides alpha when nonempty.
  std::vector<double> strengths;
};

SpectralResult robin_lambda1(const RobinProblem& p, Method method = Method::Secular, double tol = 1e-10);
SpectralResult dirichlet_lambda1(const Subgraph& omega, Method method = Method::Secular, double tol = 1e-10);

double robin_lower_bound(const Subgraph& omega, double alpha);
/// Interval of length len, Robin alpha at one end, Neumann at the other.
double robin_neumann_interval(double len, double alpha, double tol = 1e-12);
/// (lambda1 of omega with every effective degree set to 1, interval value).
std::pair<double, double> nicaise_comparison(const Subgraph& omega, double alpha);
std::vector<std::pair<double, double>> alpha_profile(const Subgraph& omega, const std::vector<double>& alphaGrid,
                                                     BoundaryMode mode = BoundaryMode::EffectiveDegree);

/// Graphs differing in one edge of length t with strengths beta, gamma at its ends.
struct GlueFamily {
  QuantumGraph base;
  int edge = 0;
  double beta = 0.0;
  double gamma = 0.0;

  /// t > 0: the base with the edge set to length t; t == 0: edge contracted, strength beta + gamma.
  QuantumGraph at(double t) const;
};

std::vector<std::pair<double, double>> glue_limit_check(const GlueFamily& family, const std::vector<double>& tGrid,
                                                        double tol = 1e-11);

}  // namespace mgp

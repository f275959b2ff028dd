#pragma once

#include "mgp/cheeger.hpp"
#include "mgp/spectral.hpp"

#include <cstdint>
#include <optional>

namespace mgp {

/// Robin coupling, or Dirichlet when alpha is empty.
struct SpectralTarget {
  std::optional<double> alpha;
  BoundaryMode mode = BoundaryMode::EffectiveDegree;

  static SpectralTarget robin(double a, BoundaryMode m = BoundaryMode::EffectiveDegree) { return {a, m}; }
  static SpectralTarget dirichlet() { return {}; }
  bool is_dirichlet() const { return !alpha.has_value(); }
};

double part_lambda1(const Subgraph& part, const SpectralTarget& target, Method method = Method::Secular);

double robin_energy(const Partition& p, double alpha, BoundaryMode mode = BoundaryMode::EffectiveDegree);
double robin_energy_p(const Partition& p, double alpha, double exponent,
                      BoundaryMode mode = BoundaryMode::EffectiveDegree);
double dirichlet_energy(const Partition& p);
double spectral_energy(const Partition& p, const SpectralTarget& target, Method method = Method::Secular);

/// Extra starting point for one class (matched by class id).
struct Seed {
  std::string classId;
  SegmentLengths lengths;
};

struct SpectralOptions {
  Method method = Method::Secular;
  int restarts = 4;
  int maxIterations = 500;
  /// Relative change of the energy across a sweep below which a start is converged.
  double relChange = 1e-8;
  /// Cut movement (relative to the longest edge) that must also have stopped.
  double positionTol = 1e-12;
  std::uint64_t seed = 1;
  /// Classes fully optimized after the surrogate pass (seeded classes are always kept).
  std::size_t shortlist = 12;
  EnumerationCaps caps;
  bool exhaustive = false;
  int jobs = 1;
  std::vector<Seed> seeds;
};

struct ClassMinimum {
  double value = 0.0;
  SegmentLengths lengths;
  int iterations = 0;
  int restarts = 0;
  /// (max - min) / max of the part eigenvalues at the returned point.
  double spread = 0.0;
  bool converged = false;
};

/// Heuristic min over realizations of max_i lambda_1(Omega_i).
ClassMinimum minimize_class(const ConfigurationClass& cls, const SpectralTarget& target,
                            const SpectralOptions& opts = {}, const std::vector<SegmentLengths>& extraStarts = {});

struct SpectralClassRow {
  std::string id;
  int maxCuts = 0;
  double surrogate = 0.0;
  bool minimized = false;
  ClassMinimum result;
};

struct SpectralPartitionResult {
  SpectralTarget target;
  double value = 0.0;
  std::optional<Partition> argmin;
  /// Enumerated class attaining the value, and the class of the realized argmin.
  std::string argminRow;
  std::string argminClass;
  SegmentLengths argminLengths;
  std::vector<SpectralClassRow> perClass;
  int iterations = 0;
  int restarts = 0;
  double spread = 0.0;
  EnumerationReport enumeration;
  std::vector<std::string> warnings;
};

SpectralPartitionResult spectral_minimal_partition(const GraphPtr& graph, int k, const SpectralTarget& target,
                                                   const SpectralOptions& opts = {});
SpectralPartitionResult robin_minimal_partition(const GraphPtr& graph, int k, double alpha,
                                                const SpectralOptions& opts = {},
                                                BoundaryMode mode = BoundaryMode::EffectiveDegree);
SpectralPartitionResult dirichlet_minimal_partition(const GraphPtr& graph, int k, const SpectralOptions& opts = {});

/// 2k * sum_v deg(v) / l_max.
double lipschitz_constant(const MetricGraph& g, int k);

struct MonotonicityRow {
  double alpha = 0.0;
  double value = 0.0;
  std::string classId;
  /// |Lambda - previous| / |alpha - previous alpha| (0 on the first row).
  double slope = 0.0;
  /// Lambda - previous Lambda (0 on the first row).
  double increase = 0.0;
  bool increasing = true;
  bool lipschitz = true;
};

struct MonotonicityTable {
  double lipschitz = 0.0;
  std::vector<MonotonicityRow> rows;
  bool ok = true;
  std::vector<std::string> violations;
};

/// Robin optimum per grid point; the grid is solved from the largest alpha down, each
/// optimum seeding the next, and reported ascending.
std::vector<SpectralPartitionResult> robin_alpha_sweep(const GraphPtr& graph, int k, const std::vector<double>& grid,
                                                       const SpectralOptions& opts = {},
                                                       BoundaryMode mode = BoundaryMode::EffectiveDegree);

MonotonicityTable alpha_monotonicity_check(const GraphPtr& graph, int k, const std::vector<double>& grid,
                                           const SpectralOptions& opts = {}, double margin = 1e-10);

enum class LimitDirection { ToZero, ToInfinity };

struct LimitRow {
  double alpha = 0.0;
  double value = 0.0;
  double valueOverAlpha = 0.0;
  std::string classId;
  /// +inf when the argmin is not in the reference class.
  double distance = 0.0;
  bool matchesReference = false;
  double smallestPart = 0.0;
  /// robin_lower_bound / alpha at the smallest part.
  double lowerBoundOverAlpha = 0.0;
};

struct LimitStudy {
  LimitDirection direction = LimitDirection::ToZero;
  std::vector<double> alphaGrid;
  std::vector<LimitRow> rows;
  /// C_k for ToZero, Lambda^D for ToInfinity.
  double referenceValue = 0.0;
  std::string referenceClass;
  std::optional<CheegerResult> cheeger;
  std::optional<SpectralPartitionResult> dirichlet;
  std::vector<std::string> warnings;
};

LimitStudy limit_study(const GraphPtr& graph, int k, LimitDirection direction, const std::vector<double>& grid,
                       const SpectralOptions& opts = {});

/// L-infinity distance in cut positions from the lengths to the set of realizations of
/// the class whose Cheeger energy is at most `level`; +inf if that set is empty.
double distance_to_cheeger_face(const ConfigurationClass& cls, const SegmentLengths& lengths, double level,
                                BoundaryMode mode = BoundaryMode::EffectiveDegree);

}  // namespace mgp

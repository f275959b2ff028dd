#include "mgp/spectral.hpp"

#include "mgp/secular.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mgp {

namespace {

constexpr double kPi = std::numbers::pi;

// moves lambda off the Dirichlet spectrum of every edge
double off_pole(const QuantumGraph& q, double lambda) {
  if (lambda <= 0) return lambda;
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool hit = false;
    for (const auto& e : q.edges) {
      double r = std::sqrt(lambda) * e.length / kPi;
      if (r >= 0.5 && std::abs(r - std::round(r)) < 1e-11 * r) hit = true;
    }
    if (!hit) return lambda;
    lambda *= 1 + 1e-10;
  }
  return lambda;
}

void normalize_samples(std::vector<EigenSample>& samples) {
  double sum = 0.0, peak = 0.0;
  for (const auto& s : samples) {
    sum += s.value;
    peak = std::max(peak, std::abs(s.value));
  }
  if (peak == 0.0) return;
  double scale = (sum < 0 ? -1.0 : 1.0) / peak;
  for (auto& s : samples) s.value *= scale;
}

std::vector<double> sample_points(const QuantumGraph& q, const QuantumEdge& e, int count) {
  std::vector<double> xs;
  count = std::max(count, 2);
  for (int j = 0; j < count; ++j) {
    if (j == 0 && q.vertices[e.from].dirichlet) continue;
    if (j == count - 1 && q.vertices[e.to].dirichlet) continue;
    xs.push_back(e.length * j / (count - 1));
  }
  if (xs.empty()) xs.push_back(e.length / 2);
  return xs;
}

EigenSample make_sample(const QuantumEdge& e, std::size_t index, double x, double value) {
  if (e.parentEdge >= 0) return {e.parentEdge, e.parentOffset + x, value};
  return {static_cast<EdgeIndex>(index), x, value};
}

SpectralResult secular_ground_state(const QuantumGraph& q, const SolverOptions& opts) {
  auto count = [&](double l) { return eigenvalue_count_below<double>(q, off_pole(q, l)); };
  double lo = 0.0;
  double hi = std::pow(kPi / q.max_edge_length(), 2) * (1 + 1e-6);
  for (int guard = 0; count(hi) < 1; ++guard) {
    if (guard > 200) throw SolverFailure("no eigenvalue bracket found");
    lo = hi;
    hi *= 2;
  }
  auto done = [&] {
    double w = hi - lo;
    return w <= std::min(opts.tol, opts.relTol * hi) || w <= 8 * std::numeric_limits<double>::epsilon() * hi;
  };
  int iterations = 0;
  bool isolated = false;
  double dlo = 0.0, dhi = 0.0;
  while (!done()) {
    if (++iterations > 2000) {
      std::ostringstream os;
      os.precision(17);
      os << "secular bisection did not converge; bracket [" << lo << ", " << hi << "]";
      throw SolverFailure(os.str());
    }
    double mid = 0.5 * (lo + hi);
    if (!isolated && count(hi) == 1) {
      dlo = secular_determinant<double>(q, lo);
      dhi = secular_determinant<double>(q, hi);
      isolated = dlo != 0.0 && dhi != 0.0 && (dlo < 0) != (dhi < 0);
    }
    if (isolated) {
      double dm = secular_determinant<double>(q, mid);
      if (dm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((dm < 0) == (dlo < 0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
        dhi = dm;
      }
    } else if (count(mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  SpectralResult r;
  r.method = Method::Secular;
  r.lambda1 = 0.5 * (lo + hi);
  r.errorEstimate = 0.5 * (hi - lo);
  if (opts.eigenfunction) {
    auto m = secular_matrix<double>(q, r.lambda1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd coef = svd.matrixV().col(m.cols() - 1);
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
      for (double x : sample_points(q, q.edges[e], opts.samplesPerEdge)) {
        double c, s;
        fundamental_pair<double>(r.lambda1, x, c, s);
        r.eigenfunctionSamples.push_back(make_sample(q.edges[e], e, x, coef(2 * e) * c + coef(2 * e + 1) * s));
      }
    }
    normalize_samples(r.eigenfunctionSamples);
  }
  return r;
}

struct MeshSolution {
  double lambda;
  // per quantum edge: node values at uniform subdivision points
  std::vector<std::vector<double>> nodal;
};

MeshSolution mesh_ground_state(const QuantumGraph& q, double density) {
  const int nv = static_cast<int>(q.vertices.size());
  std::vector<int> vdof(nv, -1);
  int ndof = 0;
  for (int v = 0; v < nv; ++v)
    if (!q.vertices[v].dirichlet) vdof[v] = ndof++;
  std::vector<std::vector<int>> nodes(q.edges.size());
  std::vector<double> h(q.edges.size());
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    const auto& ed = q.edges[e];
    int n = std::max(2, static_cast<int>(std::ceil(density * ed.length - 1e-9)));
    h[e] = ed.length / n;
    nodes[e].push_back(vdof[ed.from]);
    for (int i = 1; i < n; ++i) nodes[e].push_back(ndof++);
    nodes[e].push_back(vdof[ed.to]);
  }
  if (ndof == 0) throw SolverFailure("mesh has no free degrees of freedom");
  std::vector<Eigen::Triplet<double>> kt, mt;
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    const auto& nd = nodes[e];
    for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
      int a = nd[i], b = nd[i + 1];
      double ks[2][2] = {{1 / h[e], -1 / h[e]}, {-1 / h[e], 1 / h[e]}};
      double ms[2][2] = {{h[e] / 3, h[e] / 6}, {h[e] / 6, h[e] / 3}};
      int idx[2] = {a, b};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          if (idx[r] < 0 || idx[c] < 0) continue;
          kt.emplace_back(idx[r], idx[c], ks[r][c]);
          mt.emplace_back(idx[r], idx[c], ms[r][c]);
        }
    }
  }
  for (int v = 0; v < nv; ++v)
    if (vdof[v] >= 0 && q.vertices[v].strength != 0.0) kt.emplace_back(vdof[v], vdof[v], q.vertices[v].strength);
  Eigen::SparseMatrix<double> K(ndof, ndof), M(ndof, ndof);
  K.setFromTriplets(kt.begin(), kt.end());
  M.setFromTriplets(mt.begin(), mt.end());
  Eigen::SparseMatrix<double> A = K + M;  // shift -1 keeps the operator positive definite
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw SolverFailure("mesh factorization failed");
  Eigen::VectorXd x = Eigen::VectorXd::Ones(ndof);
  double rho = 0.0, prev = -1.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd y = ldlt.solve(M * x);
    double nrm = std::sqrt(y.dot(M * y));
    x = y / nrm;
    rho = x.dot(K * x);
    if (it > 2 && std::abs(rho - prev) <= 1e-15 * std::max(1.0, std::abs(rho))) break;
    prev = rho;
  }
  MeshSolution out{rho, {}};
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    std::vector<double> vals;
    for (int d : nodes[e]) vals.push_back(d >= 0 ? x(d) : 0.0);
    out.nodal.push_back(std::move(vals));
  }
  return out;
}

SpectralResult mesh_result(const QuantumGraph& q, const SolverOptions& opts) {
  MeshSolution coarse = mesh_ground_state(q, opts.meshDensity);
  MeshSolution fine = mesh_ground_state(q, 2 * opts.meshDensity);
  SpectralResult r;
  r.method = Method::Mesh;
  r.lambda1 = (4 * fine.lambda - coarse.lambda) / 3;
  r.errorEstimate = std::abs(fine.lambda - coarse.lambda) / 3;
  if (opts.eigenfunction) {
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
      const auto& vals = fine.nodal[e];
      const double len = q.edges[e].length;
      const int n = static_cast<int>(vals.size()) - 1;
      for (double x : sample_points(q, q.edges[e], opts.samplesPerEdge)) {
        double t = x / len * n;
        int i = std::min(n - 1, static_cast<int>(std::floor(t)));
        double w = t - i;
        r.eigenfunctionSamples.push_back(make_sample(q.edges[e], e, x, (1 - w) * vals[i] + w * vals[i + 1]));
      }
    }
    normalize_samples(r.eigenfunctionSamples);
  }
  return r;
}

}  // namespace

SpectralResult ground_state(const QuantumGraph& q, const SolverOptions& opts) {
  q.check();
  if (!(opts.tol > 0.0)) throw InvalidInput("tol must be positive");
  if (!q.has_dirichlet() && !q.has_positive_strength()) {
    SpectralResult r;
    r.method = opts.method;
    if (opts.eigenfunction)
      for (std::size_t e = 0; e < q.edges.size(); ++e)
        for (double x : sample_points(q, q.edges[e], opts.samplesPerEdge))
          r.eigenfunctionSamples.push_back(make_sample(q.edges[e], e, x, 1.0));
    return r;
  }
  return opts.method == Method::Secular ? secular_ground_state(q, opts) : mesh_result(q, opts);
}

SpectralResult robin_lambda1(const RobinProblem& p, Method method, double tol) {
  SolverOptions opts;
  opts.method = method;
  opts.tol = tol;
  QuantumGraph q = p.strengths.empty() ? robin_graph(p.domain, p.alpha, p.mode) : robin_graph(p.domain, p.strengths);
  return ground_state(q, opts);
}

SpectralResult dirichlet_lambda1(const Subgraph& omega, Method method, double tol) {
  SolverOptions opts;
  opts.method = method;
  opts.tol = tol;
  return ground_state(dirichlet_graph(omega), opts);
}

double robin_lower_bound(const Subgraph& omega, double alpha) {
  if (omega.boundary().empty()) throw InvalidInput("lower bound needs a nonempty boundary");
  if (!(alpha > 0.0)) throw InvalidInput("lower bound needs alpha > 0");
  const double len = total_length(omega), pi2 = kPi * kPi;
  return 2 * alpha * pi2 / (2 * len * (pi2 + 4 * alpha * len));
}

double robin_neumann_interval(double len, double alpha, double tol) {
  if (!(len > 0.0)) throw InvalidInput("interval length must be positive");
  if (alpha == 0.0) return 0.0;
  // k tan(k len) = alpha on (0, pi / (2 len))
  double lo = 0.0, hi = kPi / (2 * len);
  for (int it = 0; it < 200 && hi - lo > std::min(tol, 1e-15 * hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::tan(mid * len) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  double k = 0.5 * (lo + hi);
  return k * k;
}

std::pair<double, double> nicaise_comparison(const Subgraph& omega, double alpha) {
  if (omega.boundary().empty()) throw InvalidInput("comparison needs a nonempty boundary");
  RobinProblem p{omega, alpha, BoundaryMode::EffectiveDegree, std::vector<double>(omega.descendants().size(), 0.0)};
  for (const auto& b : omega.boundary()) p.strengths[b.descendant] = alpha;
  double lhs = robin_lambda1(p, Method::Secular, 1e-12).lambda1;
  double rhs = robin_neumann_interval(total_length(omega), alpha);
  return {lhs, rhs};
}

std::vector<std::pair<double, double>> alpha_profile(const Subgraph& omega, const std::vector<double>& alphaGrid,
                                                     BoundaryMode mode) {
  for (std::size_t i = 0; i < alphaGrid.size(); ++i) {
    if (alphaGrid[i] < 0) throw InvalidInput("alpha grid entries must be >= 0");
    if (i > 0 && alphaGrid[i] < alphaGrid[i - 1]) throw InvalidInput("alpha grid must be ascending");
  }
  std::vector<std::pair<double, double>> out;
  for (double a : alphaGrid) out.push_back({a, robin_lambda1(RobinProblem{omega, a, mode, {}}, Method::Secular, 1e-13).lambda1});
  return out;
}

QuantumGraph GlueFamily::at(double t) const {
  if (edge < 0 || edge >= static_cast<int>(base.edges.size())) throw InvalidInput("distinguished edge out of range");
  const QuantumEdge& d = base.edges[edge];
  if (d.from == d.to) throw InvalidInput("distinguished edge must not be a loop");
  if (t < 0) throw InvalidInput("t must be >= 0");
  QuantumGraph g = base;
  if (t > 0) {
    g.edges[edge].length = t;
    g.vertices[d.from].strength = beta;
    g.vertices[d.to].strength = gamma;
    return g;
  }
  QuantumGraph out;
  std::vector<int> map(base.vertices.size());
  for (std::size_t v = 0, next = 0; v < base.vertices.size(); ++v) {
    if (static_cast<int>(v) == d.to) continue;
    map[v] = static_cast<int>(next++);
    out.vertices.push_back(base.vertices[v]);
  }
  map[d.to] = map[d.from];
  out.vertices[map[d.from]].strength = beta + gamma;
  for (std::size_t e = 0; e < base.edges.size(); ++e) {
    if (static_cast<int>(e) == edge) continue;
    QuantumEdge qe = base.edges[e];
    qe.from = map[qe.from];
    qe.to = map[qe.to];
    out.edges.push_back(qe);
  }
  return out;
}

std::vector<std::pair<double, double>> glue_limit_check(const GlueFamily& family, const std::vector<double>& tGrid,
                                                        double tol) {
  std::vector<std::pair<double, double>> out;
  SolverOptions opts;
  opts.tol = tol;
  for (double t : tGrid) out.push_back({t, ground_state(family.at(t), opts).lambda1});
  return out;
}

}  // namespace mgp

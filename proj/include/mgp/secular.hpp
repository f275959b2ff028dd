#pragma once

#include "mgp/quantum_graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace mgp {

/// c(x) = cos(sqrt(lambda) x), s(x) = sin(sqrt(lambda) x)/sqrt(lambda); entire in lambda.
template <typename Scalar>
void fundamental_pair(Scalar lambda, Scalar x, Scalar& c, Scalar& s) {
  using std::abs;
  const Scalar mu = lambda * x * x;
  if (abs(mu) < Scalar(1e-2)) {
    c = 1 - mu / 2 * (1 - mu / 12 * (1 - mu / 30 * (1 - mu / 56 * (1 - mu / 90))));
    s = x * (1 - mu / 6 * (1 - mu / 20 * (1 - mu / 42 * (1 - mu / 72 * (1 - mu / 110)))));
    return;
  }
  if (lambda > 0) {
    Scalar k = std::sqrt(lambda);
    c = std::cos(k * x);
    s = std::sin(k * x) / k;
  } else {
    Scalar k = std::sqrt(-lambda);
    c = std::cosh(k * x);
    s = std::sinh(k * x) / k;
  }
}

/// Rows: continuity and flux balance at delta vertices, vanishing values at
/// Dirichlet vertices. Unknowns (A_e, B_e) with f_e = A_e c + B_e s.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> secular_matrix(const QuantumGraph& q, Scalar lambda) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = 2 * static_cast<Eigen::Index>(q.edges.size());
  Matrix out = Matrix::Zero(m, m);
  struct End {
    Eigen::Index edge;
    bool atTo;
  };
  std::vector<std::vector<End>> ends(q.vertices.size());
  std::vector<Scalar> cl(q.edges.size()), sl(q.edges.size());
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    ends[q.edges[e].from].push_back({static_cast<Eigen::Index>(e), false});
    ends[q.edges[e].to].push_back({static_cast<Eigen::Index>(e), true});
    fundamental_pair<Scalar>(lambda, Scalar(q.edges[e].length), cl[e], sl[e]);
  }
  auto put_value = [&](Eigen::Index row, const End& end, Scalar w) {
    if (end.atTo) {
      out(row, 2 * end.edge) += w * cl[end.edge];
      out(row, 2 * end.edge + 1) += w * sl[end.edge];
    } else {
      out(row, 2 * end.edge) += w;
    }
  };
  auto put_flux = [&](Eigen::Index row, const End& end) {
    if (end.atTo) {
      out(row, 2 * end.edge) += lambda * sl[end.edge];
      out(row, 2 * end.edge + 1) -= cl[end.edge];
    } else {
      out(row, 2 * end.edge + 1) += 1;
    }
  };
  Eigen::Index row = 0;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    const auto& es = ends[v];
    if (es.empty()) continue;
    if (q.vertices[v].dirichlet) {
      for (const auto& end : es) put_value(row++, end, 1);
      continue;
    }
    for (std::size_t j = 1; j < es.size(); ++j) {
      put_value(row, es[j], 1);
      put_value(row, es[0], -1);
      ++row;
    }
    for (const auto& end : es) put_flux(row, end);
    put_value(row, es[0], -Scalar(q.vertices[v].strength));
    ++row;
  }
  return out;
}

template <typename Scalar>
Scalar secular_determinant(const QuantumGraph& q, Scalar lambda) {
  return secular_matrix<Scalar>(q, lambda).partialPivLu().determinant();
}

/// Number of eigenvalues strictly below lambda: negative inertia of the
/// vertex form at lambda plus the decoupled edge Dirichlet count.
template <typename Scalar>
int eigenvalue_count_below(const QuantumGraph& q, Scalar lambda) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  std::vector<int> index(q.vertices.size(), -1);
  int n = 0;
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (!q.vertices[v].dirichlet) index[v] = n++;
  int count = 0;
  Matrix form = Matrix::Zero(n, n);
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (index[v] >= 0) form(index[v], index[v]) = Scalar(q.vertices[v].strength);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (const auto& e : q.edges) {
    Scalar c, s;
    fundamental_pair<Scalar>(lambda, Scalar(e.length), c, s);
    if (lambda > 0) {
      Scalar ratio = std::sqrt(lambda) * Scalar(e.length) / pi;
      Scalar fl = std::floor(ratio);
      count += static_cast<int>(fl == ratio ? fl - 1 : fl);
    }
    const int a = index[e.from], b = index[e.to];
    if (a >= 0) form(a, a) += c / s;
    if (b >= 0) form(b, b) += c / s;
    if (a >= 0 && b >= 0) {
      form(a, b) -= 1 / s;
      form(b, a) -= 1 / s;
    }
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(form, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < n; ++i)
      if (es.eigenvalues()(i) < 0) ++count;
  }
  return count;
}

}  // namespace mgp

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace mgp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize c^T x  subject to  rows,  x >= 0.
template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  struct Row {
    Vector coeff;
    Sense sense;
    Scalar rhs;
  };

  explicit LinearProgram(Eigen::Index variables) : objective(Vector::Zero(variables)) {}

  Eigen::Index variables() const { return objective.size(); }
  Vector& add_row(Sense sense, Scalar rhs) {
    rows.push_back({Vector::Zero(variables()), sense, rhs});
    return rows.back().coeff;
  }

  Vector objective;
  std::vector<Row> rows;
};

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Scalar value = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
};

namespace detail {

template <typename Scalar>
class Tableau {
public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Tableau(Matrix a, Vector b, std::vector<Eigen::Index> basis, Scalar eps)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)), eps_(eps) {}

  // Bland's rule; returns false when unbounded.
  bool maximize(const Vector& cost, const std::vector<bool>& allowed) {
    const Eigen::Index m = a_.rows(), n = a_.cols();
    for (int guard = 0; guard < 100000; ++guard) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n && enter < 0; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Scalar r = cost(j);
        for (Eigen::Index i = 0; i < m; ++i) r -= cost(basis_[i]) * a_(i, j);
        if (r > eps_) enter = j;
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (a_(i, enter) <= eps_) continue;
        Scalar ratio = b_(i) / a_(i, enter);
        if (leave < 0 || ratio < best - eps_ || (ratio <= best + eps_ && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    Scalar p = a_(row, col);
    a_.row(row) /= p;
    b_(row) /= p;
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (i == row) continue;
      Scalar f = a_(i, col);
      if (f == Scalar(0)) continue;
      a_.row(i) -= f * a_.row(row);
      b_(i) -= f * b_(row);
      if (std::abs(b_(i)) < eps_) b_(i) = 0;
    }
    basis_[row] = col;
  }

  bool is_basic(Eigen::Index j) const {
    for (auto bj : basis_)
      if (bj == j) return true;
    return false;
  }

  Vector solution() const {
    Vector x = Vector::Zero(a_.cols());
    for (std::size_t i = 0; i < basis_.size(); ++i) x(basis_[i]) = b_(static_cast<Eigen::Index>(i));
    return x;
  }

  Matrix a_;
  Vector b_;
  std::vector<Eigen::Index> basis_;
  Scalar eps_;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's rule.
template <typename Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& lp, Scalar eps = Scalar(1e-11)) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = lp.variables();
  const Eigen::Index m = static_cast<Eigen::Index>(lp.rows.size());

  Eigen::Index slacks = 0, artificials = 0;
  for (const auto& r : lp.rows) {
    bool flip = r.rhs < 0;
    Sense s = r.sense;
    if (flip && s != Sense::Equal) s = (s == Sense::LessEqual) ? Sense::GreaterEqual : Sense::LessEqual;
    if (s != Sense::Equal) ++slacks;
    if (s != Sense::LessEqual) ++artificials;
  }
  const Eigen::Index cols = n + slacks + artificials;
  Matrix a = Matrix::Zero(m, cols);
  Vector b(m);
  std::vector<Eigen::Index> basis(m);
  Eigen::Index nextSlack = n, nextArt = n + slacks;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    Scalar sign = r.rhs < 0 ? Scalar(-1) : Scalar(1);
    Sense s = r.sense;
    if (sign < 0 && s != Sense::Equal) s = (s == Sense::LessEqual) ? Sense::GreaterEqual : Sense::LessEqual;
    a.row(i).head(n) = sign * r.coeff.transpose();
    b(i) = sign * r.rhs;
    if (s == Sense::LessEqual) {
      a(i, nextSlack) = 1;
      basis[i] = nextSlack++;
    } else {
      if (s == Sense::GreaterEqual) a(i, nextSlack++) = -1;
      a(i, nextArt) = 1;
      basis[i] = nextArt++;
    }
  }

  detail::Tableau<Scalar> t(std::move(a), std::move(b), std::move(basis), eps);
  LpSolution<Scalar> out;
  std::vector<bool> allowed(cols, true);
  if (artificials > 0) {
    Vector cost = Vector::Zero(cols);
    cost.tail(artificials).setConstant(-1);
    t.maximize(cost, allowed);
    Scalar infeas = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (t.basis_[i] >= n + slacks) infeas += t.b_(i);
    Scalar scale = 1;
    for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(lp.rows[i].rhs));
    if (infeas > eps * 100 * scale) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t.basis_[i] < n + slacks) continue;
      for (Eigen::Index j = 0; j < n + slacks; ++j) {
        if (std::abs(t.a_(i, j)) > eps && !t.is_basic(j)) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (Eigen::Index j = n + slacks; j < cols; ++j) allowed[j] = false;
  }
  Vector cost = Vector::Zero(cols);
  cost.head(n) = lp.objective;
  if (!t.maximize(cost, allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  Vector full = t.solution();
  out.status = LpStatus::Optimal;
  out.x = full.head(n).cwiseMax(Scalar(0));
  out.value = lp.objective.dot(out.x);
  return out;
}

}  // namespace mgp

#include "prg/lp.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace prg::lp {

namespace {

constexpr double kPivotTol = 1e-10;

// Dense tableau simplex with Bland's rule. Entering column: smallest index
// with positive reduced cost; leaving row: smallest ratio, ties broken by
// smallest basic variable index.
struct Tableau {
  Eigen::MatrixXd body;   // m x (ncols + 1), last column = rhs
  Eigen::RowVectorXd obj; // reduced costs, length ncols + 1
  std::vector<int> basis; // basic variable per row
  int ncols;

  void pivot(int row, int col) {
    body.row(row) /= body(row, col);
    for (int i = 0; i < body.rows(); ++i) {
      if (i != row && std::abs(body(i, col)) > 0.0)
        body.row(i) -= body(i, col) * body.row(row);
    }
    if (std::abs(obj(col)) > 0.0) obj -= obj(col) * body.row(row);
    basis[static_cast<size_t>(row)] = col;
  }

  // Returns true on optimality, false on unboundedness.
  bool solve(const std::vector<bool>& allowed, long& iter, long iter_cap) {
    const long m = body.rows();
    while (true) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (allowed[static_cast<size_t>(j)] && obj(j) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (body(i, enter) > kPivotTol) {
          double ratio = body(i, ncols) / body(i, enter);
          if (leave < 0 || ratio < best - kPivotTol ||
              (ratio < best + kPivotTol &&
               basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      if (++iter > iter_cap)
        throw std::runtime_error("lp: simplex iteration limit exceeded");
    }
  }
};

}  // namespace

Outcome maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                 const Eigen::VectorXd& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(c.size());
  if (A.rows() != b.size() || (m > 0 && A.cols() != n))
    throw std::invalid_argument("lp: dimension mismatch");

  if (m == 0) {
    if (c.lpNorm<Eigen::Infinity>() <= kPivotTol)
      return {Status::optimal, 0.0, Eigen::VectorXd::Zero(n),
              Eigen::VectorXd(0)};
    return {Status::unbounded};
  }

  // Standard form via variable splitting: x = xp - xm, slack per row,
  // artificials on rows whose rhs had to be negated.
  std::vector<bool> negated(static_cast<size_t>(m));
  std::vector<int> art_of_row(static_cast<size_t>(m), -1);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    negated[static_cast<size_t>(i)] = b(i) < 0.0;
    if (negated[static_cast<size_t>(i)]) art_of_row[static_cast<size_t>(i)] = n_art++;
  }
  const int ncols = 2 * n + m + n_art;

  Tableau t;
  t.ncols = ncols;
  t.body.setZero(m, ncols + 1);
  t.basis.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    double sgn = negated[static_cast<size_t>(i)] ? -1.0 : 1.0;
    t.body.block(i, 0, 1, n) = sgn * A.row(i);
    t.body.block(i, n, 1, n) = -sgn * A.row(i);
    t.body(i, 2 * n + i) = sgn;
    t.body(i, ncols) = sgn * b(i);
    if (negated[static_cast<size_t>(i)]) {
      int a = 2 * n + m + art_of_row[static_cast<size_t>(i)];
      t.body(i, a) = 1.0;
      t.basis[static_cast<size_t>(i)] = a;
    } else {
      t.basis[static_cast<size_t>(i)] = 2 * n + i;
    }
  }

  long iter = 0;
  const long iter_cap = std::max<long>(200, 50L * (m + n));
  std::vector<bool> allow_all(static_cast<size_t>(ncols), true);

  // Phase 1: drive artificials to zero.
  if (n_art > 0) {
    t.obj.setZero(ncols + 1);
    for (int j = 2 * n + m; j < ncols; ++j) t.obj(j) = -1.0;
    for (int i = 0; i < m; ++i)
      if (t.basis[static_cast<size_t>(i)] >= 2 * n + m) t.obj += t.body.row(i);
    t.solve(allow_all, iter, iter_cap);
    if (t.obj(ncols) > 1e-8) return {Status::infeasible};
    // Pivot any artificial still basic out of the basis (or accept the
    // degenerate zero row if no structural column is available).
    for (int i = 0; i < m; ++i) {
      if (t.basis[static_cast<size_t>(i)] >= 2 * n + m) {
        for (int j = 0; j < 2 * n + m; ++j) {
          if (std::abs(t.body(i, j)) > kPivotTol) {
            t.pivot(i, j);
            break;
          }
        }
      }
    }
  }

  // Phase 2.
  std::vector<bool> allowed(static_cast<size_t>(ncols), true);
  for (int j = 2 * n + m; j < ncols; ++j) allowed[static_cast<size_t>(j)] = false;
  t.obj.setZero(ncols + 1);
  t.obj.segment(0, n) = c.transpose();
  t.obj.segment(n, n) = -c.transpose();
  for (int i = 0; i < m; ++i) {
    int bv = t.basis[static_cast<size_t>(i)];
    double cb = (bv < n) ? c(bv) : (bv < 2 * n ? -c(bv - n) : 0.0);
    if (cb != 0.0) t.obj -= cb * t.body.row(i);
  }
  if (!t.solve(allowed, iter, iter_cap)) return {Status::unbounded};

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd cb = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    int bv = t.basis[static_cast<size_t>(i)];
    double val = t.body(i, ncols);
    if (bv < n) {
      x(bv) += val;
      cb(i) = c(bv);
    } else if (bv < 2 * n) {
      x(bv - n) -= val;
      cb(i) = -c(bv - n);
    }
    // Reassemble the basis column in original standard form for the dual.
    for (int r = 0; r < m; ++r) {
      double sgn = negated[static_cast<size_t>(r)] ? -1.0 : 1.0;
      if (bv < n) B(r, i) = sgn * A(r, bv);
      else if (bv < 2 * n) B(r, i) = -sgn * A(r, bv - n);
      else if (bv < 2 * n + m) B(r, i) = (bv - 2 * n == r) ? sgn : 0.0;
      else B(r, i) = (art_of_row[static_cast<size_t>(r)] == bv - 2 * n - m) ? 1.0 : 0.0;
    }
  }
  Eigen::VectorXd y = B.transpose().fullPivLu().solve(cb);
  for (int i = 0; i < m; ++i)
    if (negated[static_cast<size_t>(i)]) y(i) = -y(i);

  return {Status::optimal, c.dot(x), x, y};
}

}  // namespace prg::lp

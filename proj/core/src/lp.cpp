#include "cvnn/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvnn::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-8;
constexpr int kMaxIter = 20000;

// Tableau rows: basis equations; last column is the rhs. Row `m` holds the
// reduced costs of the current objective, row `m+1` (phase 1 only) the
// original objective being carried along.
struct Tableau {
  int m = 0;
  int cols = 0;
  std::vector<int> basis;
  Mat t;

  double& at(int r, int c) { return t(r, c); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r < t.rows(); ++r) {
      if (r == row) continue;
      const double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Bland's rule: lowest-index entering column with negative reduced cost,
  // lowest-index leaving row among minimum ratios.
  Status run(int obj_row, int ncols_active) {
    for (int iter = 0; iter < kMaxIter; ++iter) {
      int enter = -1;
      for (int c = 0; c < ncols_active; ++c) {
        if (t(obj_row, c) < -kPivotTol) { enter = c; break; }
      }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      double best = 0.0;
      for (int r = 0; r < m; ++r) {
        const double a = t(r, enter);
        if (a > kPivotTol) {
          const double ratio = t(r, cols - 1) / a;
          if (leave < 0 || ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && basis[r] < basis[leave])) {
            leave = r;
            best = ratio;
          }
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }
};

}  // namespace

Solution solve(const Problem& p) {
  const int nv = static_cast<int>(p.c.size());
  if (p.A.cols() != nv || p.lb.size() != nv || p.ub.size() != nv || p.A.rows() != p.b.size())
    throw std::invalid_argument("lp: inconsistent problem dimensions");
  for (int i = 0; i < nv; ++i)
    if (!std::isfinite(p.lb[i])) throw std::invalid_argument("lp: lower bounds must be finite");

  // shift to y = x - lb >= 0 and append finite upper-bound rows
  const int m0 = static_cast<int>(p.A.rows());
  std::vector<int> ub_rows;
  for (int i = 0; i < nv; ++i)
    if (std::isfinite(p.ub[i])) ub_rows.push_back(i);
  const int m = m0 + static_cast<int>(ub_rows.size());

  Mat A = Mat::Zero(m, nv);
  Vec b(m);
  A.topRows(m0) = p.A;
  b.head(m0) = p.b - p.A * p.lb;
  for (size_t r = 0; r < ub_rows.size(); ++r) {
    A(m0 + static_cast<int>(r), ub_rows[r]) = 1.0;
    b[m0 + static_cast<int>(r)] = p.ub[ub_rows[r]] - p.lb[ub_rows[r]];
  }

  // columns: nv structural + m slacks + up to m artificials + rhs
  int nart = 0;
  for (int r = 0; r < m; ++r)
    if (b[r] < 0.0) ++nart;

  const int nslack = m;
  const int ncols = nv + nslack + nart;
  Tableau tab;
  tab.m = m;
  tab.cols = ncols + 1;
  tab.basis.assign(m, -1);
  tab.t = Mat::Zero(m + 2, ncols + 1);

  int art = nv + nslack;
  for (int r = 0; r < m; ++r) {
    double sgn = 1.0;
    if (b[r] < 0.0) sgn = -1.0;
    tab.t.block(r, 0, 1, nv) = sgn * A.row(r);
    tab.t(r, nv + r) = sgn;  // slack
    tab.t(r, ncols) = sgn * b[r];
    if (sgn < 0.0) {
      tab.t(r, art) = 1.0;
      tab.basis[r] = art++;
    } else {
      tab.basis[r] = nv + r;
    }
  }

  // phase-2 objective (minimize -c^T y), carried in the extra row
  for (int c = 0; c < nv; ++c) tab.t(m + 1, c) = -p.c[c];

  if (nart > 0) {
    // phase-1 objective: minimize the artificial sum
    for (int c = nv + nslack; c < ncols; ++c) tab.t(m, c) = 1.0;
    for (int r = 0; r < m; ++r)
      if (tab.basis[r] >= nv + nslack) tab.t.row(m) -= tab.t.row(r);
    const Status s1 = tab.run(m, ncols);
    if (s1 != Status::Optimal) return {s1 == Status::Unbounded ? Status::Infeasible : s1, Vec(), 0.0};
    if (tab.t(m, ncols) < -kFeasTol) return {Status::Infeasible, Vec(), 0.0};
    // drive leftover artificials out of the basis where possible
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= nv + nslack) {
        int c = 0;
        for (; c < nv + nslack; ++c)
          if (std::abs(tab.t(r, c)) > kPivotTol) break;
        if (c < nv + nslack) tab.pivot(r, c);
      }
    }
  }

  // phase 2 on structural + slack columns only
  tab.t.row(m) = tab.t.row(m + 1);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < nv + nslack && std::abs(tab.t(m, tab.basis[r])) > 0.0)
      tab.t.row(m) -= tab.t(m, tab.basis[r]) * tab.t.row(r);
  }
  const Status s2 = tab.run(m, nv + nslack);
  if (s2 != Status::Optimal) return {s2, Vec(), 0.0};

  Vec y = Vec::Zero(nv);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < nv) y[tab.basis[r]] = tab.t(r, ncols);
  Solution sol;
  sol.status = Status::Optimal;
  sol.x = y + p.lb;
  sol.objective = p.c.dot(sol.x);
  return sol;
}

}  // namespace cvnn::lp

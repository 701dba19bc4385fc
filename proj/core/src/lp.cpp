#include "dtmwb/lp.hpp"

namespace dtmwb {

namespace {

struct Tableau {
  int m = 0;
  int cols = 0;  // structural + slack + artificial, rhs stored at index cols
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;
  std::vector<Rational> obj;  // reduced costs, obj[cols] = objective value

  void pivot(int r, int c) {
    Rational p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      Rational f = t[i][c];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    if (sgn(obj[c]) != 0) {
      Rational f = obj[c];
      for (int j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Sets obj from a cost vector over columns (maximization).
  void load_objective(const std::vector<Rational>& cost) {
    obj.assign(cols + 1, Rational(0));
    for (int j = 0; j < cols; ++j) obj[j] = -cost[j];
    for (int i = 0; i < m; ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j <= cols; ++j) obj[j] += cb * t[i][j];
    }
  }

  // Returns false when unbounded.
  bool optimize(int usable_cols) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  using Sense = LinearProgram::Sense;
  const int n = lp.n;
  const int m = static_cast<int>(lp.rows.size());

  // Normalize to nonnegative right-hand sides.
  std::vector<LinearProgram::Row> rows = lp.rows;
  for (auto& r : rows) {
    r.a.resize(n);
    if (sgn(r.b) < 0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.sense == Sense::le) r.sense = Sense::ge;
      else if (r.sense == Sense::ge) r.sense = Sense::le;
    }
  }
  int slacks = 0;
  int arts = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::eq) ++slacks;
    if (r.sense != Sense::le) ++arts;
  }
  Tableau tab;
  tab.m = m;
  tab.cols = n + slacks + arts;
  tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
  tab.basis.assign(m, -1);
  int s = n;
  int a = n + slacks;
  for (int i = 0; i < m; ++i) {
    const auto& r = rows[i];
    for (int j = 0; j < n; ++j) tab.t[i][j] = r.a[j];
    tab.t[i][tab.cols] = r.b;
    if (r.sense == Sense::le) {
      tab.t[i][s] = 1;
      tab.basis[i] = s++;
    } else {
      if (r.sense == Sense::ge) tab.t[i][s++] = -1;
      tab.t[i][a] = 1;
      tab.basis[i] = a++;
    }
  }

  LpResult res;
  if (arts > 0) {
    std::vector<Rational> cost(tab.cols, Rational(0));
    for (int j = n + slacks; j < tab.cols; ++j) cost[j] = -1;
    tab.load_objective(cost);
    tab.optimize(tab.cols);
    if (sgn(tab.obj[tab.cols]) != 0) {
      res.status = LpResult::Status::infeasible;
      return res;
    }
    // Drive artificial variables out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < n + slacks) continue;
      for (int j = 0; j < n + slacks; ++j) {
        if (sgn(tab.t[i][j]) != 0) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }
  std::vector<Rational> cost(tab.cols, Rational(0));
  for (int j = 0; j < n && j < static_cast<int>(lp.c.size()); ++j) cost[j] = lp.c[j];
  tab.load_objective(cost);
  if (!tab.optimize(n + slacks)) {
    res.status = LpResult::Status::unbounded;
    return res;
  }
  res.status = LpResult::Status::optimal;
  res.value = tab.obj[tab.cols];
  res.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.cols];
  }
  return res;
}

}  // namespace dtmwb

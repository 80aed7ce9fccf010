#include "monolat/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace monolat::lp {

namespace {

// Solve M x = rhs by Gaussian elimination with partial pivoting. Returns false
// on a singular pivot.
bool gauss_solve(DenseMatrix M, std::vector<double> rhs, std::vector<double>& x) {
  const int n = M.rows;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(M.at(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double v = std::fabs(M.at(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-14) return false;
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(M.at(k, c), M.at(piv, c));
      std::swap(rhs[k], rhs[piv]);
    }
    for (int r = k + 1; r < n; ++r) {
      const double f = M.at(r, k) / M.at(k, k);
      if (f == 0.0) continue;
      for (int c = k; c < n; ++c) M.at(r, c) -= f * M.at(k, c);
      rhs[r] -= f * rhs[k];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double v = rhs[r];
    for (int c = r + 1; c < n; ++c) v -= M.at(r, c) * x[c];
    x[r] = v / M.at(r, r);
  }
  return true;
}

struct Tableau {
  int m, n_total;               // rows, structural + artificial columns
  DenseMatrix t;                // m x (n_total + 1), rhs in the last column
  std::vector<int> basis;       // basic column per row
  std::vector<double> reduced;  // current reduced cost row, size n_total
  int iterations = 0;

  int rhs_col() const { return n_total; }

  void pivot(int r, int c) {
    const double pv = t.at(r, c);
    const double inv = 1.0 / pv;
    for (int j = 0; j <= n_total; ++j) t.at(r, j) *= inv;
    t.at(r, c) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = t.at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= n_total; ++j) t.at(i, j) -= f * t.at(r, j);
      t.at(i, c) = 0.0;
    }
    const double fr = reduced[c];
    if (fr != 0.0) {
      for (int j = 0; j < n_total; ++j) reduced[j] -= fr * t.at(r, j);
      reduced[c] = 0.0;
    }
    basis[r] = c;
    ++iterations;
  }

  void load_costs(const std::vector<double>& cost) {
    reduced = cost;
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < n_total; ++j) reduced[j] -= cb * t.at(i, j);
    }
  }

  // One phase of Bland pivoting over the allowed column range [0, limit).
  // Returns false when an entering column exists but no admissible pivot row
  // does (unbounded direction).
  bool run(int limit, double pivot_tol) {
    constexpr double kReducedTol = 1e-9;
    const int max_iter = 50000;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced[j] < -kReducedTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double largest_skipped = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = t.at(i, enter);
        if (a > pivot_tol) {
          const double ratio = t.at(i, rhs_col()) / a;
          if (ratio < best_ratio - 1e-15 ||
              (std::fabs(ratio - best_ratio) <= 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        } else if (a > 0.0) {
          largest_skipped = std::max(largest_skipped, a);
        }
      }
      if (leave < 0) {
        if (largest_skipped > 0.0)
          throw std::runtime_error("simplex: pivot magnitude below tolerance (numeric degeneracy)");
        return false;
      }
      pivot(leave, enter);
      if (iterations > max_iter) throw std::runtime_error("simplex: iteration limit exceeded");
    }
  }
};

}  // namespace

SimplexResult simplex_solve(const DenseMatrix& A, std::vector<double> b, const std::vector<double>& c,
                            double pivot_tol, double feas_tol) {
  const int m = A.rows;
  const int n = A.cols;
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
    throw std::invalid_argument("simplex_solve: dimension mismatch");

  Tableau tb;
  tb.m = m;
  tb.n_total = n + m;  // artificials appended after the structural columns
  tb.t = DenseMatrix(m, tb.n_total + 1);
  tb.basis.resize(m);

  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tb.t.at(i, j) = sign * A.at(i, j);
    tb.t.at(i, n + i) = 1.0;
    tb.t.at(i, tb.rhs_col()) = sign * b[i];
    tb.basis[i] = n + i;
  }

  SimplexResult res;

  // Phase 1: minimise the artificial mass.
  std::vector<double> phase1_cost(tb.n_total, 0.0);
  for (int i = 0; i < m; ++i) phase1_cost[n + i] = 1.0;
  tb.load_costs(phase1_cost);
  tb.run(tb.n_total, pivot_tol);

  double art_cost = 0.0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] >= n) art_cost += tb.t.at(i, tb.rhs_col());
  if (art_cost > feas_tol) {
    res.status = SimplexStatus::Infeasible;
    res.iterations = tb.iterations;
    return res;
  }

  // Drive basic artificials out where a structural pivot exists; rows without
  // one are redundant and stay inert at level zero.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::fabs(tb.t.at(i, j)) > pivot_tol) {
        tb.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over the structural columns only.
  std::vector<double> phase2_cost(tb.n_total, 0.0);
  for (int j = 0; j < n; ++j) phase2_cost[j] = c[j];
  tb.load_costs(phase2_cost);
  if (!tb.run(n, pivot_tol)) {
    res.status = SimplexStatus::Unbounded;
    res.iterations = tb.iterations;
    return res;
  }

  // Recompute the basic solution from the original columns; the tableau values
  // accumulate pivoting error that one fresh solve plus a refinement step removes.
  res.x.assign(n, 0.0);
  DenseMatrix B(m, m);
  std::vector<double> rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs[i] = b[i];
    for (int r = 0; r < m; ++r) {
      const int col = tb.basis[r];
      B.at(i, r) = col < n ? A.at(i, col) : (i == col - n ? 1.0 : 0.0);
    }
  }
  std::vector<double> xb;
  if (gauss_solve(B, rhs, xb)) {
    std::vector<double> resid(m, 0.0);
    for (int i = 0; i < m; ++i) {
      double acc = b[i];
      for (int r = 0; r < m; ++r) acc -= B.at(i, r) * xb[r];
      resid[i] = acc;
    }
    std::vector<double> dx;
    if (gauss_solve(B, resid, dx))
      for (int r = 0; r < m; ++r) xb[r] += dx[r];
    for (int r = 0; r < m; ++r)
      if (tb.basis[r] < n) res.x[tb.basis[r]] = xb[r];
  } else {
    for (int r = 0; r < m; ++r)
      if (tb.basis[r] < n) res.x[tb.basis[r]] = tb.t.at(r, tb.rhs_col());
  }

  res.status = SimplexStatus::Optimal;
  res.iterations = tb.iterations;
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace monolat::lp

#pragma once

#include <vector>

namespace monolat::lp {

struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Infeasible;
  std::vector<double> x;  // primal solution, size = A.cols
  double objective = 0.0;
  int iterations = 0;
};

/// Minimise c.x subject to A x = b, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule throughout (entering:
/// lowest index with negative reduced cost; leaving: lowest basic index among
/// ratio ties), which guarantees termination on the degenerate homogeneous
/// systems this project produces. Rows with negative b are negated up front.
/// The final basic solution is recomputed from the original columns with one
/// step of iterative refinement.
///
/// Throws std::runtime_error on numeric degeneracy (no ratio-test pivot above
/// pivot_tol while entries just below it exist) or iteration blow-up.
SimplexResult simplex_solve(const DenseMatrix& A, std::vector<double> b, const std::vector<double>& c,
                            double pivot_tol = 1e-11, double feas_tol = 1e-9);

}  // namespace monolat::lp

#pragma once

#include <functional>
#include <vector>

#include "monolat/core.hpp"

namespace monolat::grid {

/// Pointwise coefficient data of the diffusion: local volatilities (>= 0),
/// correlation in [-1, 1], and drifts.
struct CoefficientField {
  std::function<double(double, double)> sigma1;
  std::function<double(double, double)> sigma2;
  std::function<double(double, double)> rho;
  std::function<double(double, double)> mu1;
  std::function<double(double, double)> mu2;

  static CoefficientField constant(double s1, double s2, double rho, double mu1 = 0.0, double mu2 = 0.0);
};

struct Rect {
  double x0, x1, y0, y1;
};

/// Local anisotropy of the discretised problem: R = sigma1 H / (sigma2 h).
ReducedModel local_reduce(double sigma1, double sigma2, double rho, const LatticeConfig& config);

struct NodeRecord {
  int ix, iy;
  double x, y;
  double local_R;   // NaN at degenerate-volatility nodes
  int chosen_s;     // 0 for degenerate rows; the necessary bound when infeasible
  bool feasible;
  double lambda;    // NaN when infeasible
  double time_step; // per-node k = lambda h^2 / sigma1^2; NaN when infeasible
};

struct RowEntry {
  long col;      // global node index ix * ny + iy
  double coeff;  // off-diagonal generator coefficient, >= 0
};

/// Discrete generator on the interior of a rectangular grid. Each feasible
/// interior node carries non-negative off-diagonal coefficients and the
/// implied diagonal -sum(coeffs), so every row sums to zero exactly.
/// Infeasible nodes carry no row and are only flagged.
struct GridOperator {
  int nx = 0, ny = 0;
  double h = 0, H = 0;
  int s_max = 1;
  Rect bounds{};
  std::vector<NodeRecord> nodes;            // interior nodes in index order
  std::vector<std::vector<RowEntry>> rows;  // parallel to nodes; empty when infeasible
  std::vector<double> diag;                 // parallel to nodes; 0 when infeasible

  long node_index(int ix, int iy) const { return static_cast<long>(ix) * ny + iy; }
  bool all_feasible() const;
  long infeasible_count() const;
};

/// Assemble the generator over all interior nodes (those a full s_max-wide
/// footprint away from the boundary; at least a 3x3 interior is required).
/// Per node: degenerate volatilities get the one-dimensional or zero row of
/// the trivial cases, otherwise the smallest feasible radius is found, the
/// scale-maximising LP kernel built (cached on quantised (R, rho, s)), drift
/// applied upwind, and the row emitted. Nonzero drift rescales the kernel so
/// the donation exactly saturates the centre mass.
GridOperator assemble_operator(const CoefficientField& field, const LatticeConfig& config,
                               const Rect& bounds, int s_max);

struct GridFunction {
  int nx = 0, ny = 0;
  std::vector<double> v;

  GridFunction() = default;
  GridFunction(int nx_, int ny_, double fill = 0.0)
      : nx(nx_), ny(ny_), v(static_cast<std::size_t>(nx_) * ny_, fill) {}
  double& at(int ix, int iy) { return v[static_cast<std::size_t>(ix) * ny + iy]; }
  double at(int ix, int iy) const { return v[static_cast<std::size_t>(ix) * ny + iy]; }
};

/// One explicit step u+ = sum p_ij u(. + (i,j)) with a single kernel applied on
/// the interior; the boundary band is copied. A convex combination, so the
/// discrete maximum principle holds and constants are preserved exactly.
GridFunction explicit_step(const TransitionKernel& kernel, const GridFunction& u);

/// One explicit step of the assembled operator. Requires every node feasible
/// and k consistent with each node's own time step.
GridFunction explicit_step(const GridOperator& op, const GridFunction& u, double k);

struct AuditNode {
  double S1, S2;
  double local_R;
  int min_s;  // minimal feasible radius, or the necessary bound when infeasible
  bool feasible;
};

/// Feasibility audit of the two-asset constant-volatility pricing operator on
/// a uniform isotropic mesh, where the local anisotropy sigma1 S1 / (sigma2 S2)
/// sweeps the full range O(1/n) .. O(n) across the grid.
struct AuditReport {
  double rho = 0, sigma1 = 1, sigma2 = 1;
  int n = 0, s_max = 1;
  std::vector<AuditNode> nodes;
  long feasible_count = 0;
  long infeasible_count = 0;
  double feasible_fraction = 1.0;
  int max_necessary_s = 1;
  double R_min = 0, R_max = 0;
  bool expect_infeasible = false;    // rho != 0 and n > s_max/|rho|
  bool statement_holds = true;       // expect_infeasible implies infeasible_count > 0
  bool corollary_explains_all = true;  // every infeasible node violates the necessary bound
};

AuditReport bs_audit(double rho, double sigma1, double sigma2, int n, int s_max);

}  // namespace monolat::grid

#include "monolat/lp.hpp"

#include <cmath>
#include <limits>

#include "monolat/feasibility.hpp"

namespace monolat::lp {

namespace {

constexpr double kLambdaEps = 1e-12;  // below this the maximal scale counts as nonexistent

int pvar_count(int s) { return (2 * s + 1) * (2 * s + 1) - 1; }

// Column index of p_ij under (i, j)-lexicographic order with (0,0) skipped.
int pvar_col(int s, int i, int j) {
  const int side = 2 * s + 1;
  const int flat = (i + s) * side + (j + s);
  const int centre = s * side + s;
  return flat < centre ? flat : flat - 1;
}

TransitionKernel kernel_from_solution(int s, double lambda, const std::vector<double>& x) {
  TransitionKernel k(s, lambda);
  double sum = 0.0;
  for (int i = -s; i <= s; ++i) {
    for (int j = -s; j <= s; ++j) {
      if (i == 0 && j == 0) continue;
      const double v = x[pvar_col(s, i, j)];
      k.at(i, j) = v;
      sum += v;
    }
  }
  double p00 = 1.0 - sum;
  if (p00 < 0.0 && p00 > -1e-13) p00 = 0.0;
  k.at(0, 0) = p00;
  return k;
}

}  // namespace

MomentLP build_moment_lp(const ReducedModel& m, const StencilSpec& spec) {
  const int s = spec.s;
  const int np = pvar_count(s);
  MomentLP out;
  out.s = s;
  out.lambda_col = np;
  out.slack_col = np + 1;
  out.A = DenseMatrix(6, np + 2);
  out.b = {0.0, 0.0, 0.0, 0.0, 0.0, 1.0};

  for (int i = -s; i <= s; ++i) {
    for (int j = -s; j <= s; ++j) {
      if (i == 0 && j == 0) continue;
      const int col = pvar_col(s, i, j);
      out.A.at(0, col) = static_cast<double>(i) * i;
      out.A.at(1, col) = static_cast<double>(j) * j;
      out.A.at(2, col) = static_cast<double>(i) * j;
      out.A.at(3, col) = i;
      out.A.at(4, col) = j;
      out.A.at(5, col) = 1.0;
    }
  }
  out.A.at(0, out.lambda_col) = -1.0;
  out.A.at(1, out.lambda_col) = -1.0 / (m.R * m.R);
  out.A.at(2, out.lambda_col) = -m.rho / m.R;
  out.A.at(5, out.slack_col) = 1.0;
  return out;
}

KernelSolution solve_kernel(const ReducedModel& m, const StencilSpec& spec, Objective objective) {
  const MomentLP prob = build_moment_lp(m, spec);
  std::vector<double> cost(prob.A.cols, 0.0);
  cost[prob.lambda_col] = -1.0;  // maximise lambda

  const SimplexResult stage1 = simplex_solve(prob.A, prob.b, cost);
  KernelSolution sol;
  sol.iterations = stage1.iterations;
  if (stage1.status != SimplexStatus::Optimal)
    throw std::runtime_error("solve_kernel: scale-maximising stage did not reach an optimum");

  const double lambda_star = stage1.x[prob.lambda_col];
  sol.objective_value = lambda_star;
  if (lambda_star <= kLambdaEps) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }

  if (objective == Objective::LambdaMax) {
    sol.status = SolveStatus::Optimal;
    sol.kernel = kernel_from_solution(prob.s, lambda_star, stage1.x);
    return sol;
  }

  // Compactness: pin lambda at half the maximal scale (interior of the mass
  // constraint), minimise the second-moment spread of the support.
  KernelSolution refined = solve_kernel_fixed(m, spec, 0.5 * lambda_star);
  refined.objective_value = lambda_star;
  refined.iterations += sol.iterations;
  if (refined.status != SolveStatus::Optimal)
    throw std::runtime_error("solve_kernel: compactness stage lost feasibility at lambda*/2");
  return refined;
}

KernelSolution solve_kernel_fixed(const ReducedModel& m, const StencilSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_kernel_fixed: lambda must be positive");
  const int s = spec.s;
  const int np = pvar_count(s);

  DenseMatrix A(6, np + 1);
  std::vector<double> b = {lambda, lambda / (m.R * m.R), lambda * m.rho / m.R, 0.0, 0.0, 1.0};
  std::vector<double> cost(np + 1, 0.0);
  for (int i = -s; i <= s; ++i) {
    for (int j = -s; j <= s; ++j) {
      if (i == 0 && j == 0) continue;
      const int col = pvar_col(s, i, j);
      A.at(0, col) = static_cast<double>(i) * i;
      A.at(1, col) = static_cast<double>(j) * j;
      A.at(2, col) = static_cast<double>(i) * j;
      A.at(3, col) = i;
      A.at(4, col) = j;
      A.at(5, col) = 1.0;
      cost[col] = static_cast<double>(i) * i + static_cast<double>(j) * j;
    }
  }
  A.at(5, np) = 1.0;  // mass slack

  const SimplexResult res = simplex_solve(A, b, cost);
  KernelSolution sol;
  sol.iterations = res.iterations;
  sol.objective_value = lambda;
  if (res.status != SimplexStatus::Optimal) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  sol.status = SolveStatus::Optimal;
  sol.kernel = kernel_from_solution(s, lambda, res.x);
  return sol;
}

MomentReport verify_kernel(const TransitionKernel& kernel, const ReducedModel& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_kernel: tol must be positive");
  MomentReport rep;
  double s_ii = 0, s_jj = 0, s_ij = 0, s_i = 0, s_j = 0, s_p = 0;
  double min_entry = std::numeric_limits<double>::infinity();
  for (int i = -kernel.s; i <= kernel.s; ++i) {
    for (int j = -kernel.s; j <= kernel.s; ++j) {
      const double v = kernel.at(i, j);
      min_entry = std::min(min_entry, v);
      s_ii += static_cast<double>(i) * i * v;
      s_jj += static_cast<double>(j) * j * v;
      s_ij += static_cast<double>(i) * j * v;
      s_i += i * v;
      s_j += j * v;
      s_p += v;
    }
  }
  rep.sums = {s_ii, s_jj, s_ij, s_i, s_j, s_p};
  rep.targets = {kernel.lambda, kernel.lambda / (m.R * m.R), kernel.lambda * m.rho / m.R, 0.0, 0.0, 1.0};
  rep.min_entry = min_entry;
  rep.pass = min_entry >= -tol;
  for (int k = 0; k < 6; ++k) {
    rep.residuals[k] = std::fabs(rep.sums[k] - rep.targets[k]);
    if (rep.residuals[k] > tol) rep.pass = false;
  }
  return rep;
}

ConsistencyReport farkas_cross_check(const ReducedModel& m, const StencilSpec& spec) {
  ConsistencyReport rep{CrossCheckOutcome::Disagree, feasibility::is_feasible(m, spec), {}, {}, {}};
  rep.solution = solve_kernel(m, spec, Objective::LambdaMax);
  const bool lp_feasible = rep.solution.status == SolveStatus::Optimal && rep.solution.objective_value > kLambdaEps;

  const double band = classification_tolerance(rep.verdict.threshold);
  const bool in_band = std::isfinite(rep.verdict.margin) && std::fabs(rep.verdict.margin) <= band;

  if (!lp_feasible && !in_band) rep.certificate = feasibility::dual_certificate(m, spec);

  if (in_band) {
    // The analytic margin cannot separate the two sides here. A verifiable
    // kernel still decides the feasible direction constructively.
    if (lp_feasible && verify_kernel(rep.solution.kernel, m, 1e-8).pass) {
      rep.outcome = CrossCheckOutcome::AgreeFeasible;
      rep.note = "boundary margin, kernel verified";
    } else {
      rep.outcome = CrossCheckOutcome::Inconclusive;
      rep.note = "margin inside classification band";
    }
    return rep;
  }

  if (rep.verdict.feasible && lp_feasible) {
    rep.outcome = CrossCheckOutcome::AgreeFeasible;
  } else if (!rep.verdict.feasible && !lp_feasible) {
    rep.outcome = rep.certificate ? CrossCheckOutcome::AgreeInfeasible : CrossCheckOutcome::Disagree;
    if (!rep.certificate) rep.note = "infeasible but no dual certificate constructed";
  } else {
    rep.outcome = CrossCheckOutcome::Disagree;
    rep.note = rep.verdict.feasible ? "dual criterion feasible, LP scale vanished"
                                    : "dual criterion infeasible, LP produced a kernel";
  }
  return rep;
}

TransitionKernel swap_axes(const TransitionKernel& kernel, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("swap_axes: R must be positive");
  TransitionKernel out(kernel.s, kernel.lambda / (R * R));
  for (int i = -kernel.s; i <= kernel.s; ++i)
    for (int j = -kernel.s; j <= kernel.s; ++j) out.at(j, i) = kernel.at(i, j);
  return out;
}

TransitionKernel reflect_rho(const TransitionKernel& kernel) {
  TransitionKernel out(kernel.s, kernel.lambda);
  for (int i = -kernel.s; i <= kernel.s; ++i)
    for (int j = -kernel.s; j <= kernel.s; ++j) out.at(i, -j) = kernel.at(i, j);
  return out;
}

}  // namespace monolat::lp

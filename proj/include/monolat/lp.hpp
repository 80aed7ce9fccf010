#pragma once

#include <array>
#include <optional>
#include <string>

#include "monolat/core.hpp"
#include "monolat/simplex.hpp"

namespace monolat::lp {

enum class Objective { LambdaMax, Compactness };
enum class SolveStatus { Optimal, Infeasible };

/// Moment-matching system in standard form: five moment rows (second, cross,
/// first order) homogeneous in (p, lambda), plus the mass row sum p + slack = 1.
/// Variables are the off-centre p_ij in (i, j)-lexicographic order, then
/// lambda, then the mass slack; p_00 is recovered as 1 - sum p afterwards.
struct MomentLP {
  int s = 1;
  DenseMatrix A;          // 6 x (n_p + 2)
  std::vector<double> b;  // (0, 0, 0, 0, 0, 1)
  int lambda_col = 0;
  int slack_col = 0;
};

MomentLP build_moment_lp(const ReducedModel& m, const StencilSpec& spec);

struct KernelSolution {
  SolveStatus status = SolveStatus::Infeasible;
  TransitionKernel kernel;      // valid only when status == Optimal
  double objective_value = 0.0; // lambda* of the scale-maximising stage
  int iterations = 0;
};

/// Solve for a kernel with the time-step scale lambda as a decision variable.
/// LambdaMax maximises lambda (lambda* > 0 iff the dual criterion holds, by
/// homogeneity of the moment rows); Compactness re-solves at lambda = lambda*/2
/// minimising sum (i^2 + j^2) p_ij. Infeasible models report status only.
KernelSolution solve_kernel(const ReducedModel& m, const StencilSpec& spec,
                            Objective objective = Objective::LambdaMax);

/// Paper-normalisation mode: lambda pinned to the given value (e.g. 1), which
/// may be infeasible even when some smaller scale works.
KernelSolution solve_kernel_fixed(const ReducedModel& m, const StencilSpec& spec, double lambda);

/// Residual report for the six moment conditions, targets
/// (lambda, lambda/R^2, lambda rho/R, 0, 0, 1), plus the minimum entry.
struct MomentReport {
  std::array<double, 6> sums{};
  std::array<double, 6> targets{};
  std::array<double, 6> residuals{};
  double min_entry = 0.0;
  bool pass = false;
};

MomentReport verify_kernel(const TransitionKernel& kernel, const ReducedModel& m, double tol);

enum class CrossCheckOutcome { AgreeFeasible, AgreeInfeasible, Inconclusive, Disagree };

struct ConsistencyReport {
  CrossCheckOutcome outcome;
  FeasibilityVerdict verdict;
  KernelSolution solution;
  std::optional<DualCertificate> certificate;
  std::string note;
};

/// Run the dual evaluator and the primal LP against each other: exactly one of
/// {kernel with lambda* > 0, dual certificate} must exist. Margins inside the
/// boundary band resolve to AgreeFeasible when the LP still produces a
/// verifiable kernel (exact ratio-set membership), otherwise Inconclusive.
ConsistencyReport farkas_cross_check(const ReducedModel& m, const StencilSpec& spec);

/// Transpose (i, j) -> (j, i) and rescale lambda' = lambda / R^2: a valid
/// kernel for (1/R, rho).
TransitionKernel swap_axes(const TransitionKernel& kernel, double R);

/// Reflect j -> -j: a valid kernel for (R, -rho) at the same lambda.
TransitionKernel reflect_rho(const TransitionKernel& kernel);

}  // namespace monolat::lp

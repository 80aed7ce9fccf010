#pragma once

#include <functional>
#include <optional>
#include <span>

#include "monolat/core.hpp"

namespace monolat::stencils {

struct DriftSpec {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// Classical seven-point kernel: axis neighbours plus the diagonal pair whose
/// orientation follows the sign of rho. Monotone iff |rho| <= min(R, 1/R).
/// Default lambda saturates the mass (p_00 = 0), the largest admissible
/// explicit step; a smaller lambda may be passed.
TransitionKernel seven_point(const ReducedModel& m, std::optional<double> lambda = std::nullopt);

/// Seven-point pattern stretched to steps of i in direction 1 and j in
/// direction 2 (coprime), targeting R = i/j exactly; non-negative for every
/// rho in [-1, 1] including the degenerate |rho| = 1. A user lambda above the
/// mass-saturating value is clamped to it.
TransitionKernel rational_stencil(int i, int j, double rho, std::optional<double> lambda = std::nullopt);

/// Largest time step for which the centre mass can fund the upwind donation.
double max_drift_time_step(const TransitionKernel& kernel, const DriftSpec& drift, double h, double H);

/// Upwind drift correction: mass mu k/mesh moves from the centre to the
/// neighbour the drift points at, preserving the second-order moments exactly
/// and setting the first moment to mu k. Requires config.k == lambda h^2 and a
/// sufficient centre budget (DriftBudgetError carries the admissible k).
TransitionKernel upwind_drift(const TransitionKernel& kernel, const DriftSpec& drift,
                              const LatticeConfig& config);

/// Discrete generator of the kernel applied to samples of phi on the
/// (2s+1)^2 footprint (row-major, phi(ih, jH) at (i+s)*(2s+1)+(j+s)):
///   (sum p_ij phi_ij - phi_00 sum p_ij) / (lambda h^2).
/// Exact on quadratics by moment matching.
double apply_generator(const TransitionKernel& kernel, std::span<const double> phi, double h, double H);

/// Convenience overload sampling phi on the footprint.
double apply_generator(const TransitionKernel& kernel, const std::function<double(double, double)>& phi,
                       double h, double H);

}  // namespace monolat::stencils

#pragma once

#include <optional>
#include <vector>

#include "monolat/core.hpp"

namespace monolat::feasibility {

struct EnvelopeMax {
  double value;
  Ratio arg;  // smallest maximising ratio on ties
};

/// max over the ratio set of 2*xi - xi^2*z1 (one linear piece per ratio).
EnvelopeMax envelope_max(double z1, const StencilSpec& spec);

/// Breakpoints z = 2/(xi_a + xi_b) of the upper envelope for consecutive
/// ratios xi_a < xi_b, ascending. Every ratio contributes one active piece.
std::vector<double> envelope_breakpoints(const StencilSpec& spec);

/// Infimum over 0 < z1 < 2|rho|/R of g(z1) = R^2 z1 + max_xi(2 xi - xi^2 z1).
/// g is convex piecewise linear, so the infimum is attained at an interval
/// endpoint or an envelope breakpoint and is evaluated by enumeration.
/// Returns +infinity when rho == 0 (empty interval).
double dual_infimum(const ReducedModel& m, const StencilSpec& spec);

/// A non-negative moment-matching kernel of radius s exists iff
/// dual_infimum >= 2 R |rho|. Margins inside the classification band are
/// flagged as boundary unless R is (tolerance-)rational in the ratio set,
/// in which case the closed-form stencil certifies feasibility outright.
FeasibilityVerdict is_feasible(const ReducedModel& m, const StencilSpec& spec);

/// Smallest s0 with s0 >= |rho| * max(R, 1/R); every s < s0 is infeasible.
/// s0 itself is only a candidate.
int necessary_min_s(const ReducedModel& m);

/// Open interval of z1 values admitting a dual certificate; empty iff feasible.
struct DualWindow {
  double z_minus = 0.0;
  double z_plus = 0.0;
  bool empty = true;
};

DualWindow dual_window(const ReducedModel& m, const StencilSpec& spec);

/// Midpoint certificate construction: z1 at the window midpoint, z2 at the
/// midpoint of the admissible z2 range. Verified before return; nullopt when
/// the model is feasible.
std::optional<DualCertificate> dual_certificate(const ReducedModel& m, const StencilSpec& spec);

/// Largest rho in [0, 1] that keeps (R, rho) feasible at the given radius,
/// located by bisection to absolute tolerance tol. Returns exactly 1 when R is
/// (tolerance-)rational in the ratio set. The interval structure of the
/// feasible rho-set is checked on a coarse grid first; a violation throws
/// MonotonicityError with the offending samples.
double rho_max(double R, const StencilSpec& spec, double tol);

/// Exact-rational input path: bypasses the tolerance detection for R = num/den.
double rho_max_exact(long long num, long long den, const StencilSpec& spec, double tol);

/// Smallest s <= s_max with a feasible kernel, scanning from necessary_min_s.
std::optional<int> min_stencil(const ReducedModel& m, int s_max);

}  // namespace monolat::feasibility

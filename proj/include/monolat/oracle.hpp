#pragma once

#include <optional>

#include "monolat/core.hpp"

namespace monolat::oracle {

/// Grid scan for a dual certificate: z1 = resolution, 2*resolution, ... inside
/// (0, 2|rho|/R); for each z1 the z2 range is bounded directly from the raw
/// integer inequalities i^2 z1 + j^2 z2 >= 2 i j over -s <= i, j <= s, with no
/// shared code with the analytic envelope. Returns the first verified witness.
std::optional<DualCertificate> brute_force_dual(const ReducedModel& m, const StencilSpec& spec,
                                                double resolution);

/// Feasibility by exhaustive basic-solution enumeration of the moment system
/// (s <= 2 only): true iff some non-negative basic solution carries a positive
/// scale. Independent of the simplex path.
bool exhaustive_small_lp(const ReducedModel& m, const StencilSpec& spec);

}  // namespace monolat::oracle

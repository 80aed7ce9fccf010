#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monolat/core.hpp"

namespace monolat::sweep {

/// Columnar result table with #-comment metadata, the unit all sweeps emit.
/// Blank cells (empty dual windows) are stored as NaN.
struct SweepTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // parallel to columns, equal lengths
};

/// Columns (R, rho_max, corollary_bound) over a linear (default) or log R grid;
/// the bound column is min(1, s / max(R, 1/R)).
SweepTable rho_max_curve(double R_min, double R_max, int steps, const StencilSpec& spec, double tol,
                         bool log_spacing = false);

/// Columns (R, z_minus, z_plus, empty) of the dual window at fixed rho;
/// rows with empty windows carry NaN endpoints and empty = 1.
SweepTable dual_window_curve(double R_min, double R_max, int steps, double rho, const StencilSpec& spec);

struct Disagreement {
  double R, rho;
  int s;
  std::string note;
};

struct ConsistencySummary {
  long trials = 0;
  long agree_feasible = 0;
  long agree_infeasible = 0;
  long inconclusive = 0;
  long disagree = 0;
  std::uint64_t seed = 0;
  int s_max = 1;
  std::vector<Disagreement> disagreements;
};

/// Bulk primal/dual agreement run over pseudo-random triples: R log-uniform in
/// [0.05, 20], rho uniform in [-1, 1], s uniform in {1..s_max}. The generator
/// is mt19937_64 with explicit seeding and hand-scaled uniforms, so the stream
/// is identical across platforms.
ConsistencySummary cross_check_sweep(long trials, std::uint64_t seed, int s_max);

}  // namespace monolat::sweep

#pragma once

#include <string>

#include "monolat/core.hpp"
#include "monolat/grid.hpp"
#include "monolat/sweep.hpp"

namespace monolat::io {

/// Shortest exact fixed format used everywhere: %.17g, locale-independent.
std::string fmt_g17(double v);

/// Kernel file schema: {"R", "rho", "s", "lambda", "entries": [{"i","j","p"}]}
/// with entries in (i, j)-lexicographic order over the full square, the centre
/// included, probabilities printed with 17 significant digits.
std::string kernel_to_json(const TransitionKernel& kernel, const ReducedModel& model);

struct KernelFile {
  TransitionKernel kernel;
  ReducedModel model;
};

KernelFile kernel_from_json(const std::string& text);

/// CSV: #-prefixed metadata lines, then a header row, comma separated,
/// '.' decimal point; NaN cells are left blank.
std::string to_csv(const sweep::SweepTable& table);

/// JSON twin of the CSV with the same fields.
std::string to_json(const sweep::SweepTable& table);

/// Per-node audit rows: S1,S2,localR,min_s,feasible.
std::string audit_to_csv(const grid::AuditReport& report);

/// Coordinate-list export of the assembled generator: row,col,value with the
/// diagonal included, rows in node-index order.
std::string operator_to_csv(const grid::GridOperator& op);

std::string verdict_to_json(const ReducedModel& model, int s, const FeasibilityVerdict& v);
std::string certificate_to_json(const DualCertificate& cert);

}  // namespace monolat::io

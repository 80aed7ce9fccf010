#include "monolat/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace monolat::io {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string kernel_to_json(const TransitionKernel& kernel, const ReducedModel& model) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"R\": " << fmt_g17(model.R) << ",\n";
  out << "  \"rho\": " << fmt_g17(model.rho) << ",\n";
  out << "  \"s\": " << kernel.s << ",\n";
  out << "  \"lambda\": " << fmt_g17(kernel.lambda) << ",\n";
  out << "  \"entries\": [\n";
  bool first = true;
  for (int i = -kernel.s; i <= kernel.s; ++i) {
    for (int j = -kernel.s; j <= kernel.s; ++j) {
      if (!first) out << ",\n";
      first = false;
      out << "    {\"i\": " << i << ", \"j\": " << j << ", \"p\": " << fmt_g17(kernel.at(i, j)) << "}";
    }
  }
  out << "\n  ]\n}\n";
  return out.str();
}

KernelFile kernel_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int s = j.at("s").get<int>();
  TransitionKernel k(s, j.at("lambda").get<double>());
  for (const auto& e : j.at("entries")) k.at(e.at("i").get<int>(), e.at("j").get<int>()) = e.at("p").get<double>();
  return KernelFile{std::move(k), ReducedModel(j.at("R").get<double>(), j.at("rho").get<double>())};
}

std::string to_csv(const sweep::SweepTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  const std::size_t rows = table.data.empty() ? 0 : table.data.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.data.size(); ++c) {
      if (c) out << ",";
      const double v = table.data[c][r];
      if (!std::isnan(v)) out << fmt_g17(v);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_json(const sweep::SweepTable& table) {
  std::ostringstream out;
  out << "{\n  \"metadata\": {";
  for (std::size_t k = 0; k < table.metadata.size(); ++k) {
    if (k) out << ", ";
    out << "\"" << table.metadata[k].first << "\": \"" << table.metadata[k].second << "\"";
  }
  out << "},\n  \"columns\": {";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << "\n    \"" << table.columns[c] << "\": [";
    for (std::size_t r = 0; r < table.data[c].size(); ++r) {
      if (r) out << ", ";
      const double v = table.data[c][r];
      out << (std::isnan(v) ? std::string("null") : fmt_g17(v));
    }
    out << "]";
  }
  out << "\n  }\n}\n";
  return out.str();
}

std::string audit_to_csv(const grid::AuditReport& report) {
  std::ostringstream out;
  out << "# tool: monolat " << kVersion << "\n";
  out << "# table: bs_audit\n";
  out << "# rho: " << fmt_g17(report.rho) << "\n";
  out << "# sigma1: " << fmt_g17(report.sigma1) << "\n";
  out << "# sigma2: " << fmt_g17(report.sigma2) << "\n";
  out << "# n: " << report.n << "\n";
  out << "# s_max: " << report.s_max << "\n";
  out << "# feasible_count: " << report.feasible_count << "\n";
  out << "# infeasible_count: " << report.infeasible_count << "\n";
  out << "# feasible_fraction: " << fmt_g17(report.feasible_fraction) << "\n";
  out << "# max_necessary_s: " << report.max_necessary_s << "\n";
  out << "S1,S2,localR,min_s,feasible\n";
  for (const grid::AuditNode& n : report.nodes) {
    out << fmt_g17(n.S1) << "," << fmt_g17(n.S2) << "," << fmt_g17(n.local_R) << "," << n.min_s << ","
        << (n.feasible ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string operator_to_csv(const grid::GridOperator& op) {
  std::ostringstream out;
  out << "row,col,value\n";
  for (std::size_t idx = 0; idx < op.nodes.size(); ++idx) {
    const grid::NodeRecord& rec = op.nodes[idx];
    if (!rec.feasible) continue;
    const long row = op.node_index(rec.ix, rec.iy);
    out << row << "," << row << "," << fmt_g17(op.diag[idx]) << "\n";
    for (const grid::RowEntry& e : op.rows[idx])
      out << row << "," << e.col << "," << fmt_g17(e.coeff) << "\n";
  }
  return out.str();
}

std::string verdict_to_json(const ReducedModel& model, int s, const FeasibilityVerdict& v) {
  auto num_or_null = [](double x) { return std::isfinite(x) ? fmt_g17(x) : std::string("null"); };
  std::ostringstream out;
  out << "{\"R\": " << fmt_g17(model.R) << ", \"rho\": " << fmt_g17(model.rho) << ", \"s\": " << s
      << ", \"feasible\": " << (v.feasible ? "true" : "false")
      << ", \"dual_infimum\": " << num_or_null(v.dual_infimum)
      << ", \"threshold\": " << fmt_g17(v.threshold) << ", \"margin\": " << num_or_null(v.margin)
      << ", \"boundary\": " << (v.boundary ? "true" : "false") << "}\n";
  return out.str();
}

std::string certificate_to_json(const DualCertificate& cert) {
  std::ostringstream out;
  out << "{\"z1\": " << fmt_g17(cert.z1) << ", \"z2\": " << fmt_g17(cert.z2) << ", \"sign\": " << cert.sign
      << "}\n";
  return out.str();
}

}  // namespace monolat::io

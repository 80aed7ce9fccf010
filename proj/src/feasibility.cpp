#include "monolat/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace monolat::feasibility {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double g_value(double z1, double R, const StencilSpec& spec) {
  return R * R * z1 + envelope_max(z1, spec).value;
}

}  // namespace

EnvelopeMax envelope_max(double z1, const StencilSpec& spec) {
  if (!(z1 >= 0.0)) throw std::invalid_argument("envelope_max: z1 must be non-negative");
  double best = -kInf;
  Ratio arg = spec.ratios.front();
  for (const Ratio& r : spec.ratios) {  // ascending scan keeps smallest arg on ties
    const double xi = r.value();
    const double v = 2.0 * xi - xi * xi * z1;
    if (v > best) {
      best = v;
      arg = r;
    }
  }
  return EnvelopeMax{best, arg};
}

std::vector<double> envelope_breakpoints(const StencilSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.ratios.size());
  for (std::size_t k = 0; k + 1 < spec.ratios.size(); ++k) {
    const Ratio& a = spec.ratios[k];
    const Ratio& b = spec.ratios[k + 1];
    // 2/(a + b) with the sum formed exactly in integers
    const long long num = 2 * a.den * b.den;
    const long long den = a.num * b.den + b.num * a.den;
    out.push_back(static_cast<double>(num) / static_cast<double>(den));
  }
  return out;
}

double dual_infimum(const ReducedModel& m, const StencilSpec& spec) {
  const double arho = std::fabs(m.rho);
  if (arho == 0.0) return kInf;
  const double z_max = 2.0 * arho / m.R;

  double best = std::min(g_value(0.0, m.R, spec), g_value(z_max, m.R, spec));
  for (double b : envelope_breakpoints(spec)) {
    if (b > 0.0 && b < z_max) best = std::min(best, g_value(b, m.R, spec));
  }
  return best;
}

FeasibilityVerdict is_feasible(const ReducedModel& m, const StencilSpec& spec) {
  const double threshold = 2.0 * m.R * std::fabs(m.rho);
  const double inf = dual_infimum(m, spec);
  const double margin = inf - threshold;
  const double tol = classification_tolerance(threshold);

  FeasibilityVerdict v;
  v.dual_infimum = inf;
  v.threshold = threshold;
  v.margin = margin;
  v.feasible = margin >= -tol;
  v.boundary = std::isfinite(margin) && std::fabs(margin) <= tol;
  if (v.boundary && spec.contains_value(m.R, kRationalDetectTol)) {
    // R in the ratio set: the closed-form stencil exists for every rho, so a
    // zero margin here is the exact boundary case of a certainly feasible model.
    v.feasible = true;
    v.boundary = false;
  }
  return v;
}

int necessary_min_s(const ReducedModel& m) {
  const double bound = std::fabs(m.rho) * std::max(m.R, 1.0 / m.R);
  // Guard against an upward rounding of an exactly integer bound: a too large
  // s0 would make min_stencil skip a candidate radius.
  const long long s0 = static_cast<long long>(std::ceil(bound - 1e-9));
  return static_cast<int>(std::max<long long>(1, s0));
}

DualWindow dual_window(const ReducedModel& m, const StencilSpec& spec) {
  DualWindow w;
  const double arho = std::fabs(m.rho);
  if (arho == 0.0) return w;
  const double threshold = 2.0 * m.R * arho;
  const double z_max = 2.0 * arho / m.R;

  // Piece boundaries of g on [0, z_max], ascending.
  std::vector<double> pts{0.0};
  for (double b : envelope_breakpoints(spec))
    if (b > 0.0 && b < z_max) pts.push_back(b);
  pts.push_back(z_max);
  std::sort(pts.begin(), pts.end());

  bool found = false;
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double a = pts[k], b = pts[k + 1];
    if (!(b > a)) continue;
    const double xi = envelope_max(0.5 * (a + b), spec).arg.value();
    const double slope = m.R * m.R - xi * xi;
    const double intercept = 2.0 * xi;
    // sublevel set of the active line (R^2 - xi^2) z + 2 xi < threshold on [a, b]
    double plo, phi;
    if (slope == 0.0) {
      if (!(intercept < threshold)) continue;
      plo = a;
      phi = b;
    } else {
      const double z_star = (threshold - intercept) / slope;
      if (slope > 0.0) {
        plo = a;
        phi = std::min(b, z_star);
      } else {
        plo = std::max(a, z_star);
        phi = b;
      }
      if (!(phi > plo)) continue;
    }
    if (!found) {
      lo = plo;
      hi = phi;
      found = true;
    } else {
      lo = std::min(lo, plo);
      hi = std::max(hi, phi);
    }
  }

  if (found) {
    w.empty = false;
    w.z_minus = lo;
    w.z_plus = hi;
  }
  return w;
}

std::optional<DualCertificate> dual_certificate(const ReducedModel& m, const StencilSpec& spec) {
  const DualWindow w = dual_window(m, spec);
  if (w.empty) return std::nullopt;

  const double arho = std::fabs(m.rho);
  const double threshold = 2.0 * m.R * arho;
  const double z1 = 0.5 * (w.z_minus + w.z_plus);
  const double env = envelope_max(z1, spec).value;
  const double upper = threshold - m.R * m.R * z1;
  // For R < 1 the envelope can dip below zero inside the window; z2 must stay
  // non-negative, so the admissible range is [max(0, env), upper).
  const double z2 = 0.5 * (std::max(0.0, env) + upper);

  DualCertificate cert{z1, z2, m.rho < 0.0 ? -1 : 1};

  const double vtol = 1e-12 * std::max(1.0, threshold);
  for (const Ratio& r : spec.ratios) {
    const double xi = r.value();
    if (xi * xi * cert.z1 - 2.0 * xi + cert.z2 < -vtol)
      throw CertificateError("dual_certificate: constructed witness violates the ratio inequalities");
  }
  if (!(m.R * m.R * cert.z1 - threshold + cert.z2 < 0.0))
    throw CertificateError("dual_certificate: constructed witness is not strictly dual-infeasible");
  if (cert.z1 < 0.0 || cert.z2 < 0.0)
    throw CertificateError("dual_certificate: constructed witness has a negative component");
  return cert;
}

namespace {

double rho_margin(double R, double rho, const StencilSpec& spec) {
  const ReducedModel m(R, rho);
  const double inf = dual_infimum(m, spec);
  return inf - 2.0 * R * std::fabs(rho);
}

double rho_max_bisect(double R, const StencilSpec& spec, double tol) {
  // Interval check: the margin must be non-increasing in rho (the dual domain
  // grows while the threshold grows), otherwise bisection is unsound.
  constexpr int kScan = 64;
  std::vector<std::pair<double, double>> samples;
  samples.reserve(kScan);
  for (int k = 0; k < kScan; ++k) {
    const double rho = static_cast<double>(k) / (kScan - 1);
    samples.emplace_back(rho, rho_margin(R, rho, spec));
  }
  const double slack = 1e-9 * std::max(1.0, 2.0 * R);
  for (int k = 0; k + 1 < kScan; ++k) {
    const double a = samples[k].second, b = samples[k + 1].second;
    if (std::isinf(a)) continue;
    if (b > a + slack)
      throw MonotonicityError("rho_max: margin is not non-increasing on the pre-scan grid", samples);
  }

  if (is_feasible(ReducedModel(R, 1.0), spec).feasible) return 1.0;

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (is_feasible(ReducedModel(R, mid), spec).feasible)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double rho_max(double R, const StencilSpec& spec, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rho_max: tol must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("rho_max: R must be positive and finite");
  if (spec.contains_value(R, kRationalDetectTol)) return 1.0;
  return rho_max_bisect(R, spec, tol);
}

double rho_max_exact(long long num, long long den, const StencilSpec& spec, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rho_max_exact: tol must be positive");
  if (spec.contains(num, den)) return 1.0;
  return rho_max_bisect(static_cast<double>(num) / static_cast<double>(den), spec, tol);
}

std::optional<int> min_stencil(const ReducedModel& m, int s_max) {
  if (s_max < 1) throw std::invalid_argument("min_stencil: s_max must be >= 1");
  for (int s = necessary_min_s(m); s <= s_max; ++s) {
    if (is_feasible(m, ratio_set(s)).feasible) return s;
  }
  return std::nullopt;
}

}  // namespace monolat::feasibility

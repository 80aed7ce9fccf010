#include "monolat/stencils.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace monolat::stencils {

namespace {

// Fix the zero-order condition exactly: centre entry as the complement of the
// placed off-centre mass.
void set_centre_complement(TransitionKernel& k) {
  double sum = 0.0;
  for (int i = -k.s; i <= k.s; ++i)
    for (int j = -k.s; j <= k.s; ++j)
      if (i != 0 || j != 0) sum += k.at(i, j);
  double p00 = 1.0 - sum;
  if (std::fabs(p00) < 1e-13) p00 = 0.0;  // saturating-lambda rounding dust
  if (p00 < 0.0) throw std::invalid_argument("kernel mass exceeds 1");
  k.at(0, 0) = p00;
}

}  // namespace

TransitionKernel seven_point(const ReducedModel& m, std::optional<double> lambda) {
  const double arho = std::fabs(m.rho);
  const double bound = std::min(m.R, 1.0 / m.R);
  if (arho > bound + 1e-12)
    throw std::invalid_argument("seven_point: requires |rho| <= min(R, 1/R)");

  const double mass_coeff = 1.0 + 1.0 / (m.R * m.R) - arho / m.R;
  const double lambda_max = 1.0 / mass_coeff;
  const double lam = lambda.value_or(lambda_max);
  if (!(lam > 0.0)) throw std::invalid_argument("seven_point: lambda must be positive");
  if (lam > lambda_max * (1.0 + 1e-12))
    throw std::invalid_argument("seven_point: lambda exceeds the mass-admissible bound");

  TransitionKernel k(1, lam);
  const double axis1 = 0.5 * lam * (1.0 - arho / m.R);
  const double axis2 = 0.5 * lam * (1.0 / (m.R * m.R) - arho / m.R);
  const double diag = 0.5 * lam * arho / m.R;
  k.at(1, 0) = axis1;
  k.at(-1, 0) = axis1;
  k.at(0, 1) = axis2;
  k.at(0, -1) = axis2;
  if (m.rho >= 0.0) {
    k.at(1, 1) = diag;
    k.at(-1, -1) = diag;
  } else {
    k.at(1, -1) = diag;
    k.at(-1, 1) = diag;
  }
  set_centre_complement(k);
  return k;
}

TransitionKernel rational_stencil(int i, int j, double rho, std::optional<double> lambda) {
  if (i < 1 || j < 1) throw std::invalid_argument("rational_stencil: steps must be positive");
  if (std::gcd(i, j) != 1) throw std::invalid_argument("rational_stencil: (i, j) must be coprime");
  if (!(std::fabs(rho) <= 1.0)) throw std::invalid_argument("rational_stencil: rho must lie in [-1, 1]");

  const double arho = std::fabs(rho);
  const double ii = static_cast<double>(i) * i;
  const double lambda_max = ii / (2.0 - arho);
  const double lam = std::min(lambda.value_or(lambda_max), lambda_max);
  if (!(lam > 0.0)) throw std::invalid_argument("rational_stencil: lambda must be positive");

  TransitionKernel k(std::max(i, j), lam);
  const double axis = 0.5 * lam * (1.0 - arho) / ii;
  const double diag = 0.5 * lam * arho / ii;
  k.at(i, 0) = axis;
  k.at(-i, 0) = axis;
  k.at(0, j) = axis;
  k.at(0, -j) = axis;
  if (rho >= 0.0) {
    k.at(i, j) = diag;
    k.at(-i, -j) = diag;
  } else {
    k.at(i, -j) = diag;
    k.at(-i, j) = diag;
  }
  set_centre_complement(k);
  return k;
}

double max_drift_time_step(const TransitionKernel& kernel, const DriftSpec& drift, double h, double H) {
  const double rate = std::fabs(drift.mu1) / h + std::fabs(drift.mu2) / H;
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return kernel.at(0, 0) / rate;
}

TransitionKernel upwind_drift(const TransitionKernel& kernel, const DriftSpec& drift,
                              const LatticeConfig& config) {
  const double k_expected = kernel.lambda * config.h * config.h;
  if (std::fabs(config.k - k_expected) > 1e-9 * std::max(config.k, k_expected))
    throw std::invalid_argument("upwind_drift: config.k must equal lambda * h^2 of the kernel");
  if (!std::isfinite(drift.mu1) || !std::isfinite(drift.mu2))
    throw std::invalid_argument("upwind_drift: drift must be finite");

  const double d1 = std::fabs(drift.mu1) * config.k / config.h;
  const double d2 = std::fabs(drift.mu2) * config.k / config.H;
  const double donated = d1 + d2;
  if (donated == 0.0) return kernel;

  const double budget = kernel.at(0, 0);
  if (donated > budget + 1e-12)
    throw DriftBudgetError("upwind_drift: time step too large for drift",
                           max_drift_time_step(kernel, drift, config.h, config.H));

  TransitionKernel out = kernel;
  if (d1 > 0.0) out.at(drift.mu1 >= 0.0 ? 1 : -1, 0) += d1;
  if (d2 > 0.0) out.at(0, drift.mu2 >= 0.0 ? 1 : -1) += d2;
  double p00 = budget - donated;
  if (p00 < 0.0 && p00 > -1e-13) p00 = 0.0;
  out.at(0, 0) = p00;
  return out;
}

double apply_generator(const TransitionKernel& kernel, std::span<const double> phi, double h, double H) {
  if (!(h > 0.0) || !(H > 0.0)) throw std::invalid_argument("apply_generator: mesh widths must be positive");
  const std::size_t side = static_cast<std::size_t>(kernel.side());
  if (phi.size() != side * side)
    throw std::invalid_argument("apply_generator: footprint sample size mismatch");

  const double phi00 = phi[static_cast<std::size_t>(kernel.s) * side + kernel.s];
  double acc = 0.0;
  for (std::size_t idx = 0; idx < phi.size(); ++idx) acc += kernel.p[idx] * (phi[idx] - phi00);
  return acc / (kernel.lambda * h * h);
}

double apply_generator(const TransitionKernel& kernel, const std::function<double(double, double)>& phi,
                       double h, double H) {
  const int side = kernel.side();
  std::vector<double> samples(static_cast<std::size_t>(side) * side);
  for (int i = -kernel.s; i <= kernel.s; ++i)
    for (int j = -kernel.s; j <= kernel.s; ++j)
      samples[static_cast<std::size_t>(i + kernel.s) * side + (j + kernel.s)] = phi(i * h, j * H);
  return apply_generator(kernel, samples, h, H);
}

}  // namespace monolat::stencils

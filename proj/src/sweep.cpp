#include "monolat/sweep.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "monolat/feasibility.hpp"
#include "monolat/lp.hpp"

namespace monolat::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> r_grid(double R_min, double R_max, int steps, bool log_spacing) {
  if (!(R_min > 0.0) || !(R_max > R_min)) throw std::invalid_argument("sweep: need 0 < R_min < R_max");
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (log_spacing) {
    const double la = std::log(R_min), lb = std::log(R_max);
    for (int k = 0; k < steps; ++k) out[k] = std::exp(la + (lb - la) * k / (steps - 1));
  } else {
    for (int k = 0; k < steps; ++k) out[k] = R_min + (R_max - R_min) * k / (steps - 1);
  }
  return out;
}

// Portable uniform in [0, 1): top 53 bits of the engine output.
double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SweepTable rho_max_curve(double R_min, double R_max, int steps, const StencilSpec& spec, double tol,
                         bool log_spacing) {
  const std::vector<double> grid = r_grid(R_min, R_max, steps, log_spacing);
  SweepTable t;
  t.metadata = {{"tool", std::string("monolat ") + kVersion},
                {"table", "rho_max_curve"},
                {"s", std::to_string(spec.s)},
                {"R_min", std::to_string(R_min)},
                {"R_max", std::to_string(R_max)},
                {"steps", std::to_string(steps)},
                {"spacing", log_spacing ? "log" : "linear"},
                {"tol", std::to_string(tol)}};
  t.columns = {"R", "rho_max", "corollary_bound"};
  t.data.assign(3, {});
  for (double R : grid) {
    t.data[0].push_back(R);
    t.data[1].push_back(feasibility::rho_max(R, spec, tol));
    t.data[2].push_back(std::min(1.0, spec.s / std::max(R, 1.0 / R)));
  }
  return t;
}

SweepTable dual_window_curve(double R_min, double R_max, int steps, double rho, const StencilSpec& spec) {
  if (!(std::fabs(rho) <= 1.0)) throw std::invalid_argument("dual_window_curve: rho must lie in [-1, 1]");
  const std::vector<double> grid = r_grid(R_min, R_max, steps, false);
  SweepTable t;
  t.metadata = {{"tool", std::string("monolat ") + kVersion},
                {"table", "dual_window_curve"},
                {"s", std::to_string(spec.s)},
                {"rho", std::to_string(rho)},
                {"R_min", std::to_string(R_min)},
                {"R_max", std::to_string(R_max)},
                {"steps", std::to_string(steps)},
                {"spacing", "linear"}};
  t.columns = {"R", "z_minus", "z_plus", "empty"};
  t.data.assign(4, {});
  for (double R : grid) {
    const feasibility::DualWindow w = feasibility::dual_window(ReducedModel(R, rho), spec);
    t.data[0].push_back(R);
    t.data[1].push_back(w.empty ? kNaN : w.z_minus);
    t.data[2].push_back(w.empty ? kNaN : w.z_plus);
    t.data[3].push_back(w.empty ? 1.0 : 0.0);
  }
  return t;
}

ConsistencySummary cross_check_sweep(long trials, std::uint64_t seed, int s_max) {
  if (trials < 0) throw std::invalid_argument("cross_check_sweep: trials must be non-negative");
  if (s_max < 1) throw std::invalid_argument("cross_check_sweep: s_max must be >= 1");

  ConsistencySummary sum;
  sum.trials = trials;
  sum.seed = seed;
  sum.s_max = s_max;

  std::mt19937_64 rng(seed);
  const double lg_lo = std::log(0.05), lg_hi = std::log(20.0);
  for (long t = 0; t < trials; ++t) {
    const double R = std::exp(lg_lo + (lg_hi - lg_lo) * u01(rng));
    const double rho = -1.0 + 2.0 * u01(rng);
    const int s = 1 + std::min(s_max - 1, static_cast<int>(u01(rng) * s_max));

    const lp::ConsistencyReport rep = lp::farkas_cross_check(ReducedModel(R, rho), ratio_set(s));
    switch (rep.outcome) {
      case lp::CrossCheckOutcome::AgreeFeasible: ++sum.agree_feasible; break;
      case lp::CrossCheckOutcome::AgreeInfeasible: ++sum.agree_infeasible; break;
      case lp::CrossCheckOutcome::Inconclusive: ++sum.inconclusive; break;
      case lp::CrossCheckOutcome::Disagree:
        ++sum.disagree;
        sum.disagreements.push_back(Disagreement{R, rho, s, rep.note});
        break;
    }
  }
  return sum;
}

}  // namespace monolat::sweep

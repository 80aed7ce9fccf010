// Command-line front end: feasibility checks, kernel construction, dual
// certificates, parameter sweeps, and the pricing-grid audit.
//
// Exit codes: 0 feasible/success, 1 infeasible (or any disagreement in
// crosscheck), 2 usage error, 3 boundary-band verdict, 4 drift budget exceeded.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "monolat/feasibility.hpp"
#include "monolat/grid.hpp"
#include "monolat/io.hpp"
#include "monolat/lp.hpp"
#include "monolat/stencils.hpp"
#include "monolat/sweep.hpp"

namespace {

using namespace monolat;

struct RInput {
  double value = 1.0;
  std::optional<std::pair<long long, long long>> exact;  // set when given as p/q
};

RInput parse_R(const std::string& text) {
  RInput out;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const long long num = std::stoll(text.substr(0, slash));
    const long long den = std::stoll(text.substr(slash + 1));
    if (num <= 0 || den <= 0) throw CLI::ValidationError("--R", "rational R must be positive");
    out.exact = {num, den};
    out.value = static_cast<double>(num) / static_cast<double>(den);
  } else {
    out.value = std::stod(text);
  }
  if (!(out.value > 0.0) || !std::isfinite(out.value))
    throw CLI::ValidationError("--R", "R must be positive and finite");
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw CLI::ValidationError("-o", "cannot open output file: " + path);
  f << content;
}

TransitionKernel rescale_kernel(const TransitionKernel& k, double lambda_target) {
  const double c = lambda_target / k.lambda;
  if (c > 1.0 + 1e-12)
    throw std::domain_error("requested lambda exceeds the maximal feasible scale " +
                            io::fmt_g17(k.lambda));
  TransitionKernel out(k.s, lambda_target);
  double off = 0.0;
  for (int i = -k.s; i <= k.s; ++i)
    for (int j = -k.s; j <= k.s; ++j) {
      if (i == 0 && j == 0) continue;
      out.at(i, j) = c * k.at(i, j);
      off += out.at(i, j);
    }
  out.at(0, 0) = 1.0 - off;
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"monolat: monotone lattice kernels for two-dimensional correlated diffusions"};
  app.require_subcommand(1);

  // ---- check ----
  auto* check = app.add_subcommand("check", "decide kernel existence for (R, rho, s)");
  std::string check_R;
  double check_rho = 0.0;
  int check_s = 1;
  bool check_json = false;
  check->add_option("--R", check_R, "anisotropy ratio (real or p/q)")->required();
  check->add_option("--rho", check_rho, "correlation in [-1, 1]")->required();
  check->add_option("--s", check_s, "stencil radius")->required()->check(CLI::PositiveNumber);
  check->add_flag("--json", check_json, "machine-readable output");

  // ---- kernel ----
  auto* kernel = app.add_subcommand("kernel", "solve the moment-matching LP for a kernel");
  kernel->set_help_flag("--help", "print help");  // frees -h for the mesh width
  std::string kern_R, kern_out;
  double kern_rho = 0.0, kern_mu1 = 0.0, kern_mu2 = 0.0, kern_h = 1.0, kern_H = 1.0;
  int kern_s = 1;
  std::string kern_objective = "lambda-max";
  double kern_lambda = 0.0;
  kernel->add_option("--R", kern_R)->required();
  kernel->add_option("--rho", kern_rho)->required();
  kernel->add_option("--s", kern_s)->required()->check(CLI::PositiveNumber);
  kernel->add_option("--objective", kern_objective, "lambda-max | compactness")
      ->check(CLI::IsMember({"lambda-max", "compactness"}));
  kernel->add_option("--lambda", kern_lambda, "rescale the kernel to this mesh ratio");
  kernel->add_option("--mu1", kern_mu1, "drift, direction 1 (upwind correction)");
  kernel->add_option("--mu2", kern_mu2, "drift, direction 2");
  kernel->add_option("--h", kern_h, "mesh width, direction 1")->check(CLI::PositiveNumber);
  kernel->add_option("--H", kern_H, "mesh width, direction 2")->check(CLI::PositiveNumber);
  kernel->add_option("-o,--output", kern_out, "kernel JSON path (default: stdout)");

  // ---- rhomax ----
  auto* rhomax = app.add_subcommand("rhomax", "sweep the largest feasible correlation over R");
  double rm_min = 1.0, rm_max = 5.0, rm_tol = 1e-6;
  int rm_steps = 101, rm_s = 1;
  bool rm_log = false, rm_json = false;
  std::string rm_out;
  rhomax->add_option("--R-min", rm_min)->required();
  rhomax->add_option("--R-max", rm_max)->required();
  rhomax->add_option("--steps", rm_steps)->required()->check(CLI::Range(2, 1000000));
  rhomax->add_option("--s", rm_s)->required()->check(CLI::PositiveNumber);
  rhomax->add_option("--tol", rm_tol)->check(CLI::PositiveNumber);
  rhomax->add_flag("--log-spacing", rm_log);
  rhomax->add_flag("--json", rm_json, "emit JSON instead of CSV");
  rhomax->add_option("-o,--output", rm_out);

  // ---- window ----
  auto* window = app.add_subcommand("window", "sweep the dual z1-window over R at fixed rho");
  double wn_min = 1.0, wn_max = 5.0, wn_rho = 0.99;
  int wn_steps = 101, wn_s = 1;
  bool wn_json = false;
  std::string wn_out;
  window->add_option("--R-min", wn_min)->required();
  window->add_option("--R-max", wn_max)->required();
  window->add_option("--steps", wn_steps)->required()->check(CLI::Range(2, 1000000));
  window->add_option("--rho", wn_rho)->required();
  window->add_option("--s", wn_s)->required()->check(CLI::PositiveNumber);
  window->add_flag("--json", wn_json);
  window->add_option("-o,--output", wn_out);

  // ---- minstencil ----
  auto* minst = app.add_subcommand("minstencil", "smallest feasible stencil radius up to a cap");
  std::string ms_R;
  double ms_rho = 0.0;
  int ms_smax = 5;
  minst->add_option("--R", ms_R)->required();
  minst->add_option("--rho", ms_rho)->required();
  minst->add_option("--s-max", ms_smax)->required()->check(CLI::PositiveNumber);

  // ---- audit-bs ----
  auto* audit = app.add_subcommand("audit-bs", "per-node feasibility audit of the two-asset pricing grid");
  double au_rho = 0.0, au_s1 = 1.0, au_s2 = 1.0;
  int au_n = 50, au_smax = 5;
  std::string au_out;
  audit->add_option("--rho", au_rho)->required();
  audit->add_option("--sigma1", au_s1)->check(CLI::PositiveNumber);
  audit->add_option("--sigma2", au_s2)->check(CLI::PositiveNumber);
  audit->add_option("--n", au_n)->required()->check(CLI::Range(4, 100000));
  audit->add_option("--s-max", au_smax)->check(CLI::PositiveNumber);
  audit->add_option("-o,--output", au_out);

  // ---- crosscheck ----
  auto* cross = app.add_subcommand("crosscheck", "bulk primal/dual agreement sweep");
  long cc_trials = 1000;
  std::uint64_t cc_seed = 42;
  int cc_smax = 6;
  cross->add_option("--trials", cc_trials)->required()->check(CLI::NonNegativeNumber);
  cross->add_option("--seed", cc_seed)->required();
  cross->add_option("--s-max", cc_smax)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*check) {
    const RInput R = parse_R(check_R);
    const ReducedModel model(R.value, check_rho);
    const FeasibilityVerdict v = feasibility::is_feasible(model, ratio_set(check_s));
    if (check_json) {
      std::cout << io::verdict_to_json(model, check_s, v);
    } else {
      std::cout << "verdict: " << (v.boundary ? "boundary" : v.feasible ? "feasible" : "infeasible")
                << "\n";
      std::cout << "dual_infimum: " << (std::isfinite(v.dual_infimum) ? io::fmt_g17(v.dual_infimum) : "inf")
                << "\n";
      std::cout << "threshold: " << io::fmt_g17(v.threshold) << "\n";
      std::cout << "margin: " << (std::isfinite(v.margin) ? io::fmt_g17(v.margin) : "inf") << "\n";
      std::cout << "boundary: " << (v.boundary ? "true" : "false") << "\n";
    }
    return v.boundary ? 3 : v.feasible ? 0 : 1;
  }

  if (*kernel) {
    const RInput R = parse_R(kern_R);
    const ReducedModel model(R.value, kern_rho);
    const StencilSpec spec = ratio_set(kern_s);
    const lp::Objective obj =
        kern_objective == "compactness" ? lp::Objective::Compactness : lp::Objective::LambdaMax;
    const lp::KernelSolution sol = lp::solve_kernel(model, spec, obj);
    if (sol.status != lp::SolveStatus::Optimal) {
      std::cerr << "infeasible: no non-negative kernel of radius " << kern_s << " matches (R="
                << io::fmt_g17(model.R) << ", rho=" << io::fmt_g17(model.rho) << ")\n";
      const auto cert = feasibility::dual_certificate(model, spec);
      if (cert) std::cerr << "dual certificate: " << io::certificate_to_json(*cert);
      return 1;
    }

    TransitionKernel k = sol.kernel;
    if (kernel->count("--lambda")) {
      if (!(kern_lambda > 0.0)) throw CLI::ValidationError("--lambda", "must be positive");
      try {
        k = rescale_kernel(k, kern_lambda);
      } catch (const std::domain_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
      }
    }
    if (kern_mu1 != 0.0 || kern_mu2 != 0.0) {
      try {
        k = stencils::upwind_drift(k, stencils::DriftSpec{kern_mu1, kern_mu2},
                                   LatticeConfig(kern_h, kern_H, k.lambda * kern_h * kern_h));
      } catch (const DriftBudgetError& e) {
        std::cerr << e.what() << "; admissible k = " << io::fmt_g17(e.admissible_k) << "\n";
        return 4;
      }
    }
    write_output(kern_out, io::kernel_to_json(k, model));
    return 0;
  }

  if (*rhomax) {
    const sweep::SweepTable t = sweep::rho_max_curve(rm_min, rm_max, rm_steps, ratio_set(rm_s), rm_tol, rm_log);
    write_output(rm_out, rm_json ? io::to_json(t) : io::to_csv(t));
    return 0;
  }

  if (*window) {
    const sweep::SweepTable t = sweep::dual_window_curve(wn_min, wn_max, wn_steps, wn_rho, ratio_set(wn_s));
    write_output(wn_out, wn_json ? io::to_json(t) : io::to_csv(t));
    return 0;
  }

  if (*minst) {
    const RInput R = parse_R(ms_R);
    const ReducedModel model(R.value, ms_rho);
    const auto s = feasibility::min_stencil(model, ms_smax);
    if (s) {
      std::cout << *s << "\n";
      return 0;
    }
    std::cout << "none (necessary bound " << feasibility::necessary_min_s(model) << " exceeds s-max "
              << ms_smax << " or no radius up to s-max is feasible)\n";
    return 1;
  }

  if (*audit) {
    const grid::AuditReport rep = grid::bs_audit(au_rho, au_s1, au_s2, au_n, au_smax);
    write_output(au_out, io::audit_to_csv(rep));
    std::cerr << "feasible " << rep.feasible_count << "/" << (static_cast<long>(au_n) * au_n)
              << " nodes (fraction " << io::fmt_g17(rep.feasible_fraction) << "), max necessary s = "
              << rep.max_necessary_s << "\n";
    return 0;
  }

  if (*cross) {
    const sweep::ConsistencySummary sum = sweep::cross_check_sweep(cc_trials, cc_seed, cc_smax);
    std::cout << "rng: mt19937_64 seed=" << sum.seed << "\n";
    std::cout << "trials: " << sum.trials << "\n";
    std::cout << "agree_feasible: " << sum.agree_feasible << "\n";
    std::cout << "agree_infeasible: " << sum.agree_infeasible << "\n";
    std::cout << "inconclusive: " << sum.inconclusive << "\n";
    std::cout << "disagree: " << sum.disagree << "\n";
    for (const sweep::Disagreement& d : sum.disagreements)
      std::cout << "  R=" << io::fmt_g17(d.R) << " rho=" << io::fmt_g17(d.rho) << " s=" << d.s << ": "
                << d.note << "\n";
    return sum.disagree > 0 ? 1 : 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

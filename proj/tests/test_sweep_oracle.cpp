#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "monolat/feasibility.hpp"
#include "monolat/io.hpp"
#include "monolat/lp.hpp"
#include "monolat/oracle.hpp"
#include "monolat/stencils.hpp"
#include "monolat/sweep.hpp"
#include "test_util.hpp"

using namespace monolat;

TEST_CASE("rho_max curve matches the s=1 closed form") {
  const sweep::SweepTable t = sweep::rho_max_curve(0.25, 4.0, 31, ratio_set(1), 1e-9);
  REQUIRE(t.columns.size() == 3);
  for (std::size_t r = 0; r < t.data[0].size(); ++r) {
    const double R = t.data[0][r];
    CHECK(t.data[1][r] == doctest::Approx(std::min(R, 1.0 / R)).epsilon(1e-8));
  }
}

TEST_CASE("rho_max curve respects the necessary bound everywhere") {
  const sweep::SweepTable t = sweep::rho_max_curve(1.0, 8.0, 41, ratio_set(3), 1e-8);
  for (std::size_t r = 0; r < t.data[0].size(); ++r)
    CHECK(t.data[1][r] <= t.data[2][r] + 1e-6);
}

TEST_CASE("spikes exactly at ratio-set members") {
  const StencilSpec s5 = ratio_set(5);
  const sweep::SweepTable t = sweep::rho_max_curve(1.0, 5.0, 9, s5, 1e-8);
  // the 9-point linear grid on [1,5] hits 1, 1.5, 2, 2.5, 3, 4, 5 among others
  for (std::size_t r = 0; r < t.data[0].size(); ++r) {
    const double R = t.data[0][r];
    if (s5.contains_value(R)) CHECK(t.data[1][r] == 1.0);
  }
}

TEST_CASE("dual window curve reproduces the closed-form window") {
  const sweep::SweepTable t = sweep::dual_window_curve(2.0, 3.0, 3, 0.99, ratio_set(1));
  // row 0 is R = 2
  CHECK(t.data[0][0] == 2.0);
  CHECK(t.data[3][0] == 0.0);
  CHECK(t.data[1][0] == doctest::Approx(0.0));
  CHECK(t.data[2][0] == doctest::Approx(49.0 / 75.0).epsilon(1e-12));
}

TEST_CASE("window emptiness complements feasibility along the curve") {
  const double rho = 0.99;
  const StencilSpec s3 = ratio_set(3);
  const sweep::SweepTable t = sweep::dual_window_curve(1.0, 6.0, 201, rho, s3);
  for (std::size_t r = 0; r < t.data[0].size(); ++r) {
    const double R = t.data[0][r];
    const FeasibilityVerdict v = feasibility::is_feasible(ReducedModel(R, rho), s3);
    if (v.boundary) continue;
    CHECK((t.data[3][r] == 1.0) == v.feasible);
  }
}

TEST_CASE("cross-check sweep agrees everywhere and is reproducible") {
  const sweep::ConsistencySummary a = sweep::cross_check_sweep(200, 7, 4);
  CHECK(a.trials == 200);
  CHECK(a.disagree == 0);
  CHECK(a.agree_feasible + a.agree_infeasible + a.inconclusive == 200);
  CHECK(a.agree_feasible > 0);
  CHECK(a.agree_infeasible > 0);

  const sweep::ConsistencySummary b = sweep::cross_check_sweep(200, 7, 4);
  CHECK(a.agree_feasible == b.agree_feasible);
  CHECK(a.agree_infeasible == b.agree_infeasible);
  CHECK(a.inconclusive == b.inconclusive);

  CHECK(sweep::cross_check_sweep(0, 1, 3).trials == 0);
}

TEST_CASE("CSV output is bitwise reproducible and blank for empty windows") {
  const sweep::SweepTable t1 = sweep::dual_window_curve(0.5, 3.0, 11, 0.7, ratio_set(2));
  const sweep::SweepTable t2 = sweep::dual_window_curve(0.5, 3.0, 11, 0.7, ratio_set(2));
  const std::string c1 = io::to_csv(t1), c2 = io::to_csv(t2);
  CHECK(c1 == c2);
  CHECK(c1.find("# table: dual_window_curve") != std::string::npos);
  CHECK(c1.find("R,z_minus,z_plus,empty") != std::string::npos);
  CHECK(c1.find(",,") != std::string::npos);  // blank cells where the window is empty

  const std::string j = io::to_json(t1);
  CHECK(j.find("\"z_minus\"") != std::string::npos);
  CHECK(j.find("null") != std::string::npos);
}

TEST_CASE("brute-force dual scan on known cases") {
  const auto found = oracle::brute_force_dual(ReducedModel(2.0, 0.99), ratio_set(1), 1e-3);
  REQUIRE(found.has_value());
  CHECK(found->z1 > 0.0);
  CHECK(found->z1 < 49.0 / 75.0);

  CHECK_FALSE(oracle::brute_force_dual(ReducedModel(1.0, 0.5), ratio_set(1), 1e-3).has_value());

  CHECK(oracle::brute_force_dual(ReducedModel(10.0, 1.0), ratio_set(3), 1e-3).has_value());
}

TEST_CASE("brute-force certificates imply infeasibility and vice versa") {
  std::mt19937_64 rng(83);
  const double res = 1e-3;
  for (int t = 0; t < 120; ++t) {
    const ReducedModel m = testutil::random_model(rng, 0.2, 8.0);
    const int s = 1 + static_cast<int>(testutil::u01(rng) * 3);
    const StencilSpec spec = ratio_set(s);
    const auto cert = oracle::brute_force_dual(m, spec, res);
    const FeasibilityVerdict v = feasibility::is_feasible(m, spec);
    if (cert) CHECK_FALSE(v.feasible);
    if (!v.feasible && v.margin < -10.0 * res * m.R * m.R) CHECK(cert.has_value());
  }
}

TEST_CASE("exhaustive vertex enumeration on closed-form cases") {
  CHECK(oracle::exhaustive_small_lp(ReducedModel(1.0, 1.0), ratio_set(1)));
  CHECK_FALSE(oracle::exhaustive_small_lp(ReducedModel(2.0, 0.6), ratio_set(1)));
  CHECK(oracle::exhaustive_small_lp(ReducedModel(2.0, 0.9), ratio_set(2)));
  CHECK_THROWS_AS(oracle::exhaustive_small_lp(ReducedModel(1.0, 0.0), ratio_set(3)),
                  std::invalid_argument);
}

TEST_CASE("exhaustive enumeration agrees with the simplex solver") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 60; ++t) {
    const ReducedModel m = testutil::random_model(rng, 0.2, 8.0);
    const int s = 1 + static_cast<int>(testutil::u01(rng) * 2);
    const StencilSpec spec = ratio_set(s);
    if (feasibility::is_feasible(m, spec).boundary) continue;
    const bool enumerated = oracle::exhaustive_small_lp(m, spec);
    const bool solved = lp::solve_kernel(m, spec).status == lp::SolveStatus::Optimal;
    CHECK(enumerated == solved);
  }
}

TEST_CASE("kernel JSON round-trips bitwise") {
  const ReducedModel m(2.0, 0.99);
  const lp::KernelSolution sol = lp::solve_kernel(m, ratio_set(2));
  REQUIRE(sol.status == lp::SolveStatus::Optimal);
  const std::string text = io::kernel_to_json(sol.kernel, m);
  const io::KernelFile back = io::kernel_from_json(text);
  CHECK(back.model.R == m.R);
  CHECK(back.model.rho == m.rho);
  CHECK(back.kernel.s == sol.kernel.s);
  CHECK(back.kernel.lambda == sol.kernel.lambda);
  for (std::size_t i = 0; i < sol.kernel.p.size(); ++i) CHECK(back.kernel.p[i] == sol.kernel.p[i]);
}

TEST_CASE("verdict and certificate JSON") {
  const ReducedModel m(4.0, 0.0);
  const FeasibilityVerdict v = feasibility::is_feasible(m, ratio_set(2));
  const std::string j = io::verdict_to_json(m, 2, v);
  CHECK(j.find("\"feasible\": true") != std::string::npos);
  CHECK(j.find("\"dual_infimum\": null") != std::string::npos);  // infinite sentinel

  const auto cert = feasibility::dual_certificate(ReducedModel(2.0, 0.99), ratio_set(1));
  REQUIRE(cert.has_value());
  const std::string cj = io::certificate_to_json(*cert);
  CHECK(cj.find("\"z1\"") != std::string::npos);
}

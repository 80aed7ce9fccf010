#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "monolat/feasibility.hpp"
#include "monolat/oracle.hpp"
#include "test_util.hpp"

using namespace monolat;
using namespace monolat::feasibility;

namespace {

// Independent bisection of the largest feasible correlation using only the
// exhaustive basic-solution oracle (s <= 2).
double rho_max_lp_oracle(double R, int s, double tol) {
  const StencilSpec spec = ratio_set(s);
  if (oracle::exhaustive_small_lp(ReducedModel(R, 1.0), spec)) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (oracle::exhaustive_small_lp(ReducedModel(R, mid), spec))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("envelope maximum over the ratio set") {
  const StencilSpec s3 = ratio_set(3);
  const EnvelopeMax a = envelope_max(0.0, s3);
  CHECK(a.value == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(a.arg == (Ratio{3, 1}));

  const EnvelopeMax b = envelope_max(1.0, ratio_set(1));
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-15));

  // candidates at z1=1, s=2: 0.75 (xi=1/2), 1 (xi=1), 0 (xi=2)
  const EnvelopeMax c = envelope_max(1.0, ratio_set(2));
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.arg == (Ratio{1, 1}));

  CHECK_THROWS_AS(envelope_max(-0.1, s3), std::invalid_argument);
}

TEST_CASE("envelope tie-break picks the smallest ratio") {
  // At the breakpoint z = 2/(1+2) the xi=1 and xi=2 lines agree.
  const EnvelopeMax e = envelope_max(2.0 / 3.0, ratio_set(2));
  CHECK(e.arg == (Ratio{1, 1}));
}

TEST_CASE("dual infimum closed forms") {
  // s=1, R=2: g = 3 z1 + 2 increasing, infimum at z1 -> 0
  CHECK(dual_infimum(ReducedModel(2.0, 0.9), ratio_set(1)) == doctest::Approx(2.0).epsilon(1e-14));
  // rho = 0: empty interval sentinel
  CHECK(std::isinf(dual_infimum(ReducedModel(3.7, 0.0), ratio_set(4))));
  // s=1, R=0.5 evaluated directly: g = 0.25 z1 + 2 - z1 at z1 = 3.6
  CHECK(dual_infimum(ReducedModel(0.5, 0.9), ratio_set(1)) == doctest::Approx(-0.7).epsilon(1e-13));
}

TEST_CASE("dual infimum lower-bounds g at random points") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const ReducedModel m(testutil::log_uniform(rng, 0.1, 10.0), 0.05 + 0.95 * testutil::u01(rng));
    const StencilSpec spec = ratio_set(1 + static_cast<int>(testutil::u01(rng) * 5));
    const double inf = dual_infimum(m, spec);
    const double z_max = 2.0 * std::fabs(m.rho) / m.R;
    for (int q = 0; q < 25; ++q) {
      const double z1 = z_max * testutil::u01(rng);
      const double g = m.R * m.R * z1 + envelope_max(z1, spec).value;
      CHECK(g >= inf - 1e-12 * std::max(1.0, std::fabs(inf)));
    }
  }
}

TEST_CASE("feasibility verdict examples") {
  CHECK(is_feasible(ReducedModel(2.0, 0.4), ratio_set(1)).feasible);
  CHECK_FALSE(is_feasible(ReducedModel(2.0, 0.6), ratio_set(1)).feasible);

  const FeasibilityVerdict spike = is_feasible(ReducedModel(5.0, 1.0), ratio_set(5));
  CHECK(spike.feasible);
  CHECK_FALSE(spike.boundary);  // ratio-set membership certifies the zero margin

  CHECK_FALSE(is_feasible(ReducedModel(10.0, 0.6), ratio_set(5)).feasible);

  const FeasibilityVerdict zero = is_feasible(ReducedModel(4.2, 0.0), ratio_set(2));
  CHECK(zero.feasible);
  CHECK(std::isinf(zero.dual_infimum));
  CHECK_FALSE(zero.boundary);
}

TEST_CASE("s=1 verdict reduces to |rho| <= min(R, 1/R)") {
  std::mt19937_64 rng(17);
  const StencilSpec s1 = ratio_set(1);
  for (int t = 0; t < 500; ++t) {
    const ReducedModel m = testutil::random_model(rng);
    const double bound = std::min(m.R, 1.0 / m.R);
    if (std::fabs(std::fabs(m.rho) - bound) < 1e-9) continue;
    CHECK(is_feasible(m, s1).feasible == (std::fabs(m.rho) <= bound));
  }
}

TEST_CASE("necessary_min_s examples") {
  CHECK(necessary_min_s(ReducedModel(10.0, 0.5)) == 5);
  CHECK(necessary_min_s(ReducedModel(1.0, 1.0)) == 1);
  CHECK(necessary_min_s(ReducedModel(7.0, 0.9)) == 7);
  CHECK(necessary_min_s(ReducedModel(0.1, 0.5)) == 5);  // swap symmetry
  CHECK(necessary_min_s(ReducedModel(3.0, 0.0)) == 1);
}

TEST_CASE("dual window examples") {
  const DualWindow w = dual_window(ReducedModel(2.0, 0.99), ratio_set(1));
  REQUIRE_FALSE(w.empty);
  CHECK(w.z_minus == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.z_plus == doctest::Approx(49.0 / 75.0).epsilon(1e-13));

  CHECK(dual_window(ReducedModel(2.0, 0.4), ratio_set(1)).empty);
  // R = 1: the single piece has slope 0 and value 2 >= 2 rho, so no window
  CHECK(dual_window(ReducedModel(1.0, 0.9), ratio_set(1)).empty);
  CHECK(dual_window(ReducedModel(3.0, 0.0), ratio_set(2)).empty);
}

TEST_CASE("dual window complementarity and bounds") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 400; ++t) {
    const ReducedModel m = testutil::random_model(rng);
    const int s = 1 + static_cast<int>(testutil::u01(rng) * 5);
    const StencilSpec spec = ratio_set(s);
    const FeasibilityVerdict v = is_feasible(m, spec);
    if (v.boundary || spec.contains_value(m.R)) continue;
    const DualWindow w = dual_window(m, spec);
    CHECK(w.empty == v.feasible);
    if (!w.empty) {
      CHECK(w.z_minus >= 0.0);
      CHECK(w.z_minus < w.z_plus);
      CHECK(w.z_plus <= 2.0 * std::fabs(m.rho) / m.R + 1e-15);
    }
  }
}

TEST_CASE("dual certificate midpoint construction") {
  const auto cert = dual_certificate(ReducedModel(2.0, 0.99), ratio_set(1));
  REQUIRE(cert.has_value());
  CHECK(cert->z1 == doctest::Approx(49.0 / 150.0).epsilon(1e-12));
  // z2 midpoint of [2 - z1, 3.96 - 4 z1]
  CHECK(cert->z2 == doctest::Approx(0.5 * ((2.0 - 49.0 / 150.0) + (3.96 - 4.0 * 49.0 / 150.0))).epsilon(1e-12));
  CHECK(cert->sign == 1);

  CHECK_FALSE(dual_certificate(ReducedModel(1.0, 0.5), ratio_set(1)).has_value());

  const auto big = dual_certificate(ReducedModel(10.0, 1.0), ratio_set(3));
  REQUIRE(big.has_value());
  // cross-validated against the independent grid scan
  const auto scanned = oracle::brute_force_dual(ReducedModel(10.0, 1.0), ratio_set(3), 1e-3);
  REQUIRE(scanned.has_value());
}

TEST_CASE("certificates satisfy both inequality families with margin") {
  std::mt19937_64 rng(41);
  int found = 0;
  for (int t = 0; t < 400 && found < 120; ++t) {
    const ReducedModel m = testutil::random_model(rng);
    const int s = 1 + static_cast<int>(testutil::u01(rng) * 4);
    const StencilSpec spec = ratio_set(s);
    const FeasibilityVerdict v = is_feasible(m, spec);
    if (v.feasible || v.boundary) continue;
    const auto cert = dual_certificate(m, spec);
    REQUIRE(cert.has_value());
    ++found;
    CHECK(cert->z1 >= 0.0);
    CHECK(cert->z2 >= 0.0);
    for (const Ratio& r : spec.ratios) {
      const double xi = r.value();
      CHECK(xi * xi * cert->z1 - 2.0 * xi + cert->z2 >= -1e-12);
    }
    const double strict = m.R * m.R * cert->z1 - 2.0 * m.R * std::fabs(m.rho) + cert->z2;
    CHECK(strict < 0.0);
    CHECK(cert->sign == (m.rho < 0 ? -1 : 1));
  }
  CHECK(found >= 100);
}

TEST_CASE("rho_max closed forms and spikes") {
  CHECK(rho_max(2.0, ratio_set(1), 1e-8) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(rho_max(5.0, ratio_set(5), 1e-8) == 1.0);
  CHECK(rho_max(1.0, ratio_set(3), 1e-8) == 1.0);
  CHECK(rho_max_exact(4, 3, ratio_set(5), 1e-8) == 1.0);
  CHECK(rho_max_exact(7, 6, ratio_set(5), 1e-8) < 1.0);
  CHECK_THROWS_AS(rho_max(2.0, ratio_set(1), 0.0), std::invalid_argument);
}

TEST_CASE("rho_max at sqrt(2) against the exhaustive-LP bisection oracle") {
  const double R = std::sqrt(2.0);
  const double analytic = rho_max(R, ratio_set(2), 1e-7);
  const double brute = rho_max_lp_oracle(R, 2, 1e-6);
  CHECK(analytic == doctest::Approx(brute).epsilon(3e-6));
  // closed form of the interior minimum: 2*sqrt(2)/3
  CHECK(analytic == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-6));
}

TEST_CASE("rho_max swap symmetry and membership characterisation") {
  std::mt19937_64 rng(59);
  const StencilSpec s4 = ratio_set(4);
  for (int t = 0; t < 25; ++t) {
    const double R = testutil::log_uniform(rng, 1.0, 10.0);
    const double a = rho_max(R, s4, 1e-9);
    const double b = rho_max(1.0 / R, s4, 1e-9);
    CHECK(std::fabs(a - b) <= 2e-9);
    CHECK((a == 1.0) == s4.contains_value(R));
  }
}

TEST_CASE("min_stencil examples") {
  CHECK(min_stencil(ReducedModel(2.0, 0.4), 3) == 1);
  CHECK(min_stencil(ReducedModel(2.0, 0.9), 3) == 2);
  CHECK_FALSE(min_stencil(ReducedModel(10.0, 0.6), 5).has_value());
  CHECK_THROWS_AS(min_stencil(ReducedModel(1.0, 0.0), 0), std::invalid_argument);
}

TEST_CASE("feasibility is monotone in the stencil radius") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 150; ++t) {
    const ReducedModel m = testutil::random_model(rng, 0.2, 5.0);
    bool prev = false;
    for (int s = 1; s <= 5; ++s) {
      const FeasibilityVerdict v = is_feasible(m, ratio_set(s));
      if (prev) CHECK(v.feasible);
      prev = v.feasible;
    }
  }
}

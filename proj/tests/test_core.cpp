#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "monolat/core.hpp"
#include "monolat/feasibility.hpp"
#include "test_util.hpp"

using namespace monolat;

TEST_CASE("ratio reduction and exact ordering") {
  const Ratio r = Ratio::reduced(4, 6);
  CHECK(r.num == 2);
  CHECK(r.den == 3);
  CHECK(Ratio::reduced(2, 3) == r);
  CHECK(Ratio::reduced(1, 3) < Ratio::reduced(1, 2));
  CHECK_THROWS_AS(Ratio::reduced(0, 1), std::invalid_argument);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ReducedModel(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ReducedModel(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ReducedModel(1.0, 1.5), std::invalid_argument);
  CHECK_NOTHROW(ReducedModel(1e-8, -1.0));
}

TEST_CASE("canonicalize examples") {
  const CanonicalForm a = canonicalize(ReducedModel(0.5, -0.3));
  CHECK(a.model.R == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.model.rho == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(a.swapped);
  CHECK(a.reflected);

  const CanonicalForm b = canonicalize(ReducedModel(1.0, 0.0));
  CHECK(b.model.R == 1.0);
  CHECK(b.model.rho == 0.0);
  CHECK_FALSE(b.swapped);
  CHECK_FALSE(b.reflected);

  const CanonicalForm c = canonicalize(ReducedModel(3.0, 0.7));
  CHECK(c.model.R == 3.0);
  CHECK(c.model.rho == 0.7);
  CHECK_FALSE(c.swapped);
  CHECK_FALSE(c.reflected);
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const ReducedModel m = testutil::random_model(rng);
    const CanonicalForm once = canonicalize(m);
    const CanonicalForm twice = canonicalize(once.model);
    CHECK(twice.model.R == once.model.R);
    CHECK(twice.model.rho == once.model.rho);
    CHECK_FALSE(twice.swapped);
    CHECK_FALSE(twice.reflected);
  }
}

TEST_CASE("ratio_set enumeration") {
  CHECK_THROWS_AS(ratio_set(0), std::invalid_argument);

  const StencilSpec s1 = ratio_set(1);
  REQUIRE(s1.ratios.size() == 1);
  CHECK(s1.ratios[0] == Ratio{1, 1});

  const StencilSpec s2 = ratio_set(2);
  REQUIRE(s2.ratios.size() == 3);
  CHECK(s2.ratios[0] == Ratio{1, 2});
  CHECK(s2.ratios[1] == Ratio{1, 1});
  CHECK(s2.ratios[2] == Ratio{2, 1});

  const StencilSpec s3 = ratio_set(3);
  REQUIRE(s3.ratios.size() == 7);
  const long long num[] = {1, 1, 2, 1, 3, 2, 3};
  const long long den[] = {3, 2, 3, 1, 2, 1, 1};
  for (int k = 0; k < 7; ++k) CHECK(s3.ratios[k] == (Ratio{num[k], den[k]}));
}

TEST_CASE("ratio_set nesting and endpoints") {
  for (int s = 1; s <= 7; ++s) {
    const StencilSpec a = ratio_set(s);
    CHECK(a.ratios.front() == (Ratio{1, s}));
    CHECK(a.ratios.back() == (Ratio{s, 1}));
    CHECK(a.contains(1, 1));
    CHECK(std::is_sorted(a.ratios.begin(), a.ratios.end()));
    const StencilSpec b = ratio_set(s + 1);
    for (const Ratio& r : a.ratios) CHECK(b.contains(r.num, r.den));
  }
}

TEST_CASE("membership tests") {
  const StencilSpec s5 = ratio_set(5);
  CHECK(s5.contains(10, 8));  // reduces to 5/4
  CHECK_FALSE(s5.contains(7, 6));
  CHECK(s5.contains_value(4.0 / 3.0));
  CHECK(s5.contains_value(1.25));
  CHECK_FALSE(s5.contains_value(1.25 + 1e-9));
  CHECK_FALSE(s5.contains_value(std::sqrt(2.0)));
}

TEST_CASE("lattice config and kernel storage") {
  CHECK_THROWS_AS(LatticeConfig(0.0, 1.0, 1.0), std::invalid_argument);
  const LatticeConfig cfg(0.5, 1.0, 0.125);
  CHECK(cfg.lambda() == doctest::Approx(0.5));

  TransitionKernel k(2, 1.0);
  k.at(-2, 1) = 0.25;
  CHECK(k.at(-2, 1) == 0.25);
  CHECK(k.mass() == doctest::Approx(0.25));
  CHECK_THROWS_AS(k.at(3, 0), std::out_of_range);
}

TEST_CASE("feasibility verdict symmetry under reflection and swap") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const ReducedModel m = testutil::random_model(rng);
    const int s = 1 + static_cast<int>(testutil::u01(rng) * 4);
    const StencilSpec spec = ratio_set(s);
    const FeasibilityVerdict base = feasibility::is_feasible(m, spec);
    if (base.boundary) continue;  // band cases excluded from the equivalence
    const FeasibilityVerdict refl = feasibility::is_feasible(ReducedModel(m.R, -m.rho), spec);
    const FeasibilityVerdict swap = feasibility::is_feasible(ReducedModel(1.0 / m.R, m.rho), spec);
    CHECK(base.feasible == refl.feasible);
    CHECK(base.feasible == swap.feasible);
    ++checked;
  }
  CHECK(checked > 250);
}

#include <doctest.h>

#include "kerrlab/phase_space.hpp"

#include <cmath>
#include <string>

using namespace kerrlab;

TEST_CASE("potential and its r-derivative against the oracle") {
  const auto p = new_params(0.9);
  const FrequencyTriplet xi{0.3, -0.5, 1.2};
  CHECK(potential_V(p, 4.2, xi) == doctest::Approx(0.04858219313900456).epsilon(1e-14));
  CHECK(dV_dr(p, 4.2, xi) == doctest::Approx(-0.015577255118178784).epsilon(1e-13));
}

TEST_CASE("barrier top location") {
  struct Case {
    double a, xt, xp, lam;
    double r_max, V_max;  // r_max < 0: strictly decreasing
  };
  // mpmath root of ∂_rV, 30 digits
  const Case cases[] = {
      {0.5, 0.0, 0.0, 1.0, 2.8832177419263525, 0.03813905851584706},
      {0.5, 0.3, 0.5, 1.0, 3.388059883578055, 0.028159925575386525},
      {0.5, -0.2, 0.7, 1.0, 2.544836725862413, 0.04921511616389864},
      {0.5, 0.6, -0.4, 0.8, -1.0, 0.0},
      {0.9, 0.0, 0.0, 1.0, 2.559996869365683, 0.04137757678115807},
      {0.9, 0.3, 0.5, 1.0, 3.6195907975712305, 0.023330860194417435},
      {0.9, -0.2, 0.7, 1.0, 2.098726493948016, 0.061710088899110074},
      {0.9, 0.6, -0.4, 0.8, -1.0, 0.0},
  };
  for (const auto& c : cases) {
    CAPTURE(c.a);
    CAPTURE(c.xt);
    CAPTURE(c.xp);
    const auto p = new_params(c.a);
    const auto rep = critical_points(p, {c.xt, c.xp, c.lam});
    if (c.r_max < 0.0) {
      CHECK(rep.kind == CriticalCase::StrictlyDecreasing);
      CHECK_FALSE(rep.r_max.has_value());
      continue;
    }
    REQUIRE(rep.r_max.has_value());
    CHECK(*rep.r_max == doctest::Approx(c.r_max).epsilon(1e-10));
    CHECK(*rep.V_at_max == doctest::Approx(c.V_max).epsilon(1e-12));
  }
}

TEST_CASE("Schwarzschild barrier sits at 3m for every frequency") {
  for (double m : {1.0, 2.5}) {
    const auto p = new_params(0.0, m);
    for (double xp : {0.0, 0.3, 1.0}) {
      const auto rep = critical_points(p, {0.4, xp, 1.0});
      REQUIRE(rep.r_max.has_value());
      CHECK(*rep.r_max == doctest::Approx(3.0 * m).epsilon(1e-12));
    }
  }
}

TEST_CASE("radial gap at the horizon is k_plus squared") {
  for (double a : {0.0, 0.4, 0.9, 0.99}) {
    const auto p = new_params(a);
    for (const FrequencyTriplet xi : {FrequencyTriplet{0.3, -0.5, 1.2}, FrequencyTriplet{-0.1, 0.9, 1.0}}) {
      const double k = k_plus(p, xi);
      CHECK(radial_gap(p, p.r_plus, xi) == doctest::Approx(k * k).epsilon(1e-12));
    }
  }
}

TEST_CASE("admissibility") {
  const auto p = new_params(0.9);
  CHECK(admissible(p, {0.0, 1.0, 1.0}));
  CHECK_FALSE(admissible(p, {0.0, 1.1, 1.0}));
  // 2|aξ_φξ_τ| = 1.8·0.8 > 1
  CHECK_FALSE(admissible(p, {1.0, 0.8, 1.0}));
  AdmissibleSampler s(p, 11);
  for (int i = 0; i < 2000; ++i) {
    const auto xi = s.next();
    CHECK(admissible(p, xi));
    CHECK(xi.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("superradiant directions land in the SR regime") {
  const auto p = new_params(0.9);
  const auto fit = search_delta_F(p, make_regime_settings(p, 0.1, 0.0).r_inner, 20.0, 4000, 7);
  REQUIRE(fit.success);
  const auto s = make_regime_settings(p, fit.delta_F, fit.theta);
  const FrequencyTriplet xi{-0.1, 0.7, 0.7};
  REQUIRE(is_superradiant(p, xi));
  const auto mem = classify_regimes(p, xi, s);
  CHECK(mem.in_SR);
  CHECK(mem.margins.g_V > 0.0);
}

TEST_CASE("partition of unity") {
  const auto p = new_params(0.5);
  const auto s = make_regime_settings(p, 0.015625, 0.005);
  AdmissibleSampler smp(p, 3);
  for (int i = 0; i < 500; ++i) {
    const auto dir = smp.next();
    const auto lo = partition_of_unity(p, dir.scaled(0.9), s);
    for (double c : lo) CHECK(c == 0.0);
    for (double lam : {2.0, 7.5}) {
      const auto chi = partition_of_unity(p, dir.scaled(lam), s);
      double sum = 0.0;
      for (double c : chi) {
        CHECK(c >= 0.0);
        sum += c * c;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("fitted non-trapping width") {
  // regression values of the δ_F ladder scan at the default sample count
  const struct {
    double a, delta_F;
  } cases[] = {{0.0, 0.03125}, {0.5, 0.015625}, {0.9, 0.0125}, {0.96, 0.02}};
  for (const auto& c : cases) {
    CAPTURE(c.a);
    const auto p = new_params(c.a);
    const auto s0 = make_regime_settings(p, 0.1, 0.0);
    const auto fit = search_delta_F(p, s0.r_inner, 20.0, 20000, 7);
    CHECK(fit.success);
    CHECK(fit.delta_F == doctest::Approx(c.delta_F));
    CHECK(fit.b_superradiant >= 0.0);
  }
}

TEST_CASE("regime names") {
  CHECK(std::string(regime_name(kSR)) == "SR");
  CHECK(std::string(regime_name(kTR2)) == "TR2");
}

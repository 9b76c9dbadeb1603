#include <doctest.h>

#include "kerrlab/suites.hpp"

using namespace kerrlab;

// Small-sample runs of the randomized suites; the acceptance driver uses the full counts.

TEST_CASE("randomized suites at reduced sample counts") {
  for (double a : {0.0, 0.6, 0.96}) {
    CAPTURE(a);
    const auto p = new_params(a);
    const auto c = default_constants(p);
    const auto mods = build_mod_functions(p, c.delta_H, c.delta_BL);
    CHECK(geometry_suite(p, mods, 500, 1).pass);
    const auto pot = potential_suite(p, 2000, 500, 2);
    CHECK(pot.pass);
    CHECK(pot.max_rmax <= 8.0);
    CHECK(symbol_suite(p, mods, 500, 3).pass);
    if (a > 0.0) CHECK(superradiance_suite(p, 2000, 4).pass);
    const auto fit = search_delta_F(p, make_regime_settings(p, 0.1, 0.0).r_inner, 20.0, 20000, 7);
    const auto s = make_regime_settings(p, fit.delta_F, fit.theta);
    const auto cov = cover_suite(p, s, 5000, 5, 1);
    CHECK(cov.pass);
    CHECK(cov.uncovered == 0);
    CHECK(cov.superradiant_outside_SR == 0);
  }
}

TEST_CASE("suites are reproducible from the seed") {
  const auto p = new_params(0.9);
  const auto a = potential_suite(p, 1000, 200, 42);
  const auto b = potential_suite(p, 1000, 200, 42);
  CHECK(a.max_rmax == b.max_rmax);
  CHECK(a.derivative_error == b.derivative_error);
  const auto s = make_regime_settings(p, 0.0125, 0.0015);
  const auto c1 = cover_suite(p, s, 3000, 9, 1);
  const auto c4 = cover_suite(p, s, 3000, 9, 4);
  CHECK(c1.counts == c4.counts);
  CHECK(c1.max_partition_defect == c4.max_partition_defect);
}

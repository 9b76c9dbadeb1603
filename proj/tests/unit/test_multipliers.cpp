#include <doctest.h>

#include "kerrlab/multipliers.hpp"
#include "kerrlab/suites.hpp"

using namespace kerrlab;

namespace {

MultiplierConstants schwarzschild_constants() {
  MultiplierConstants c;
  c.A = 4.0;
  c.B = 8.0;
  c.c_prime = 0.5;
  c.delta0 = 1.0;
  return c;
}

}  // namespace

TEST_CASE("exponential f profile hits its anchors") {
  const ExpProfile f(2.1, 3.0, 20.0, -1.0, 2.0);
  CHECK(f.value(2.1) == doctest::Approx(-1.0));
  CHECK(f.value(3.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(f.value(20.0) == doctest::Approx(2.0));
  CHECK(f.derivative(3.0) > 0.0);
  CHECK(f.derivative(2.5) > 0.0);
}

TEST_CASE("square completion") {
  const SquareCompletion q{2.0, 3.0, 5.0};
  CHECK(q.eta() == 1.5);
  CHECK(q.remainder() == 0.5);
}

TEST_CASE("Schwarzschild bulk certification on a coarse grid") {
  const auto p = new_params(0.0);
  const auto s = make_regime_settings(p, 0.03125, 0.0);
  const CertGrid grid{400, 40, 40, 1, {}, false};
  const auto rep = certify_bulk(p, s, schwarzschild_constants(), grid);
  CHECK(rep.pass);
  CHECK(rep.c_min > 0.0);
  CHECK(rep.monotone);
  CHECK(rep.d_min > 0.0);
  CHECK(rep.failing_directions.empty());

  SUBCASE("worker count does not change the result") {
    CertGrid g4 = grid;
    g4.workers = 4;
    const auto rep4 = certify_bulk(p, s, schwarzschild_constants(), g4);
    CHECK(rep4.c_min == rep.c_min);
    CHECK(rep4.worst_r == rep.worst_r);
    CHECK(rep4.points == rep.points);
  }

  SUBCASE("a broken h multiplier is caught") {
    auto c = schwarzschild_constants();
    c.h1_scale = 1000.0;
    const auto bad = certify_bulk(p, s, c, grid);
    CHECK_FALSE(bad.pass);
    CHECK(bad.c_min <= 0.0);
    CHECK_FALSE(bad.failing_directions.empty());
  }
}

TEST_CASE("certify_all runs the fit, search and boundary check") {
  const auto p = new_params(0.0);
  const auto c = default_constants(p);
  const auto mods = build_mod_functions(p, c.delta_H, c.delta_BL);
  CertifyOptions opt;
  opt.grid = {400, 40, 40, 1, {}, false};
  opt.boundary_alpha = opt.boundary_beta = 32;
  opt.fixed = schwarzschild_constants();
  const auto out = certify_all(p, mods, opt);
  CHECK(out.pass);
  CHECK(out.fit.delta_F == doctest::Approx(0.03125));
  CHECK(out.boundary.pass);
  for (const auto& r : out.boundary.regimes) {
    if (r.samples == 0) continue;
    CHECK(r.min_varpi_radicand >= 0.0);
  }
}

TEST_CASE("direction lattice is admissible") {
  const auto p = new_params(0.9);
  std::vector<int> coarse;
  const auto dirs = direction_lattice(p, 20, 20, &coarse);
  CHECK_FALSE(dirs.empty());
  CHECK(coarse.size() == dirs.size());
  for (const auto& d : dirs) CHECK(admissible(p, d));
}

#include <doctest.h>

#include "kerrlab/symbols.hpp"

#include <cmath>
#include <numbers>

using namespace kerrlab;

namespace {

ModFunctions mods_for(const BlackHoleParams& p) {
  const auto c = default_constants(p);
  return build_mod_functions(p, c.delta_H, c.delta_BL);
}

}  // namespace

TEST_CASE("Carter constant from angular data") {
  const auto p = new_params(0.7);
  const double th = 0.8, xth = 0.4, xt = -0.3, xp = 0.6;
  const double s = std::sin(th);
  const double lam2 = xth * xth + xp * xp / (s * s) + 0.49 * s * s * xt * xt;
  CHECK(carter_lambda(p, th, xth, xt, xp) == doctest::Approx(std::sqrt(lam2)));
  const auto pt = extended_point(p, 3.0, 0.2, xt, xp, th, xth);
  CHECK(pt.xi.Lambda == doctest::Approx(std::sqrt(lam2)));
  CHECK(pt.theta.value() == th);
}

TEST_CASE("wave symbol equals the metric contraction") {
  for (double a : {0.0, 0.6, 0.95}) {
    const auto p = new_params(a);
    const auto mods = mods_for(p);
    for (double r : {p.r_plus * 1.001, 2.5, 7.0, 12.5, 30.0}) {
      const auto pt = extended_point(p, r, 0.7, -0.4, 0.3, 1.2, -0.5);
      const double lhs = wave_symbol(p, mods, pt);
      const double rhs = metric_contraction(p, mods, pt);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("wave symbol in r* form away from the horizon") {
  const auto p = new_params(0.8);
  const auto mods = mods_for(p);
  PhasePoint pt;
  pt.xi = {0.5, -0.3, 1.1};
  pt.xi_r = -1.3;
  for (double r : {1.8, 3.0, 12.7, 40.0}) {
    pt.r = r;
    CHECK(wave_symbol(p, mods, pt) == doctest::Approx(wave_symbol_rstar(p, mods, pt)).epsilon(1e-11));
  }
}

TEST_CASE("central difference and Poisson bracket") {
  CHECK(central_difference([](double x) { return std::sin(x); }, 0.7) ==
        doctest::Approx(std::cos(0.7)).epsilon(1e-10));
  // {ξ_r, r} = 1 and the bracket is antisymmetric
  const SymbolFn xi_r = [](double, double q, const FrequencyTriplet&) { return q; };
  const SymbolFn rad = [](double r, double, const FrequencyTriplet&) { return r; };
  PhasePoint pt;
  pt.r = 4.0;
  pt.xi_r = 0.3;
  CHECK(poisson_bracket_reduced(xi_r, rad, pt) == doctest::Approx(1.0));
  CHECK(poisson_bracket_reduced(rad, xi_r, pt) == doctest::Approx(-1.0));
  const SymbolFn quad = [](double r, double q, const FrequencyTriplet&) { return r * r * q; };
  // {r²ξ_r, r} = r²
  CHECK(poisson_bracket_reduced(quad, rad, pt) == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("closed-form currents match the generic bulk symbol") {
  const auto p = new_params(0.9);
  const auto mods = mods_for(p);
  const FrequencyTriplet xi{0.4, 0.6, 1.0};
  for (double r : {1.6, 3.0, 9.0}) {
    PhasePoint pt;
    pt.r = r;
    pt.xi = xi;
    pt.xi_r = 0.8;
    const double xt = xi_rstar(p, mods, pt);
    const double h = 0.7, y = 0.3, dy = -0.2, f = -0.4, df = 0.15;
    CHECK(current_h(p, r, xi, xt, h) ==
          doctest::Approx(sigma2_bulk(p, mods, triple_h(p, r, h), pt)).epsilon(1e-9));
    CHECK(current_y(p, r, xi, xt, y, dy) ==
          doctest::Approx(sigma2_bulk(p, mods, triple_y(p, r, y, dy), pt)).epsilon(1e-9));
    CHECK(current_f(p, r, xi, xt, f, df) ==
          doctest::Approx(sigma2_bulk(p, mods, triple_f(p, r, f, df), pt)).epsilon(1e-9));
    CHECK(current_z(p, r, xi, xt, 0.25, 3.0) ==
          doctest::Approx(sigma2_bulk(p, mods, triple_z(p, xi, 0.5, 0.25, 3.0), pt)).epsilon(1e-9));
    CHECK(flux_y(p, mods, pt, y) ==
          doctest::Approx(sigma2_bdr(p, mods, triple_y(p, r, y, dy), pt)).epsilon(1e-9));
  }
}

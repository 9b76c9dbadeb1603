#include <doctest.h>

#include "kerrlab/errors.hpp"
#include "kerrlab/geometry.hpp"

#include <cmath>

using namespace kerrlab;

// Reference values from tests/oracles/kerr_oracle.py (sympy, exact rationals).

TEST_CASE("horizon radii and angular velocity") {
  const auto p = new_params(0.9);
  CHECK(p.r_plus == doctest::Approx(1.4358898943540674).epsilon(1e-15));
  CHECK(p.r_minus == doctest::Approx(0.5641101056459327).epsilon(1e-15));
  CHECK(p.omega_H == doctest::Approx(0.31339450313662925).epsilon(1e-15));

  const auto s = new_params(0.0);
  CHECK(s.r_plus == 2.0);
  CHECK(s.r_minus == 0.0);
  CHECK(s.omega_H == 0.0);
}

TEST_CASE("parameter validation") {
  auto code_of = [](double a, double m) {
    try {
      new_params(a, m);
    } catch (const KerrError& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of(1.0, 1.0) == ErrorCode::ExtremalOrSuper);
  CHECK(code_of(1.3, 1.0) == ErrorCode::ExtremalOrSuper);
  CHECK(code_of(0.5, 0.0) == ErrorCode::NonpositiveMass);
  CHECK(code_of(0.5, -2.0) == ErrorCode::NonpositiveMass);
  CHECK(new_params(-0.4).a == 0.4);

  const auto c = default_constants(new_params(0.9));
  CHECK(c.delta_BL > c.delta_red);
  CHECK(c.delta_red > c.delta_H);
  CHECK(c.delta_H_prime > c.delta_H);
}

TEST_CASE("Boyer-Lindquist inverse metric against symbolic inverse") {
  const auto p = new_params(0.9);
  CoordPoint pt{Chart::BoyerLindquist, {0.0, 3.7, 1.1, 0.0}};
  const auto g = metric_bl(p, pt);
  CHECK(g.ginv[0][0] == doctest::Approx(-2.090643724855123).epsilon(1e-13));
  CHECK(g.ginv[0][3] == doctest::Approx(-0.06769512774962834).epsilon(1e-13));
  CHECK(g.ginv[3][3] == doctest::Approx(0.08262916670179157).epsilon(1e-13));
  CHECK(g.ginv[1][1] == doctest::Approx(0.5123890975763911).epsilon(1e-13));
  CHECK(max_identity_defect(g.g, g.ginv) < 1e-13);
  const double q2 = p.q2(3.7, 1.1);
  CHECK(g.sqrt_det == doctest::Approx(q2 * std::sin(1.1)).epsilon(1e-13));
}

TEST_CASE("normalized inverse metric against symbolic pull-back") {
  const auto p = new_params(0.9);
  const double ref[4][4] = {
      {-2.162223349100865, 0.6517112476339149, 0.0, -0.30084014416108695},
      {0.6517112476339149, 0.3063726997092343, 0.0, 0.011303070474709614},
      {0.0, 0.0, 0.14872461150933702, 0.0},
      {-0.30084014416108695, 0.011303070474709614, 0.0, 0.300296283235321}};
  const auto gi = normalized_inverse(p, 2.5, 0.7, 1.3, 0.4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(gi[i][j] == doctest::Approx(ref[i][j]).epsilon(1e-13));
  CHECK(max_identity_defect(normalized_metric(p, 2.5, 0.7, 1.3, 0.4), gi) < 1e-13);
}

TEST_CASE("zero modifiers reduce the normalized chart to ingoing EF") {
  const auto p = new_params(0.6);
  CoordPoint pt{Chart::IngoingEF, {0.0, 1.9, 0.4, 0.0}};
  const auto ef = metric_ef(p, pt, 0.0);
  const auto gi = normalized_inverse(p, 1.9, 0.4, 0.0, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(gi[i][j] == doctest::Approx(ef.ginv[i][j]).epsilon(1e-13));
}

TEST_CASE("normalized chart stays accurate where t' is large") {
  // near the inner blend t' ~ 1/Δ; the pull-back must not lose the O(1) part
  const auto p = new_params(0.99);
  const auto c = default_constants(p);
  const auto mods = build_mod_functions(p, c.delta_H, c.delta_BL);
  for (double r : {mods.inner_lo() * (1.0 + 1e-4), 0.5 * (mods.inner_lo() + mods.inner_hi())}) {
    const double tp = mods.t_prime(r).v;
    const double pp = mods.phi_prime(r).v;
    const auto g = normalized_metric(p, r, 0.9, tp, pp);
    const auto gi = normalized_inverse(p, r, 0.9, tp, pp);
    CHECK(max_identity_defect(g, gi) < 1e-10);
  }
}

TEST_CASE("modifier blends and spacelike slices") {
  for (double a : {0.0, 0.5, 0.9, 0.99}) {
    CAPTURE(a);
    const auto p = new_params(a);
    const auto c = default_constants(p);
    BlendReport rep;
    const auto mods = build_mod_functions(p, c.delta_H, c.delta_BL, &rep);
    CHECK(rep.pass);
    CHECK(rep.lower_gap > 0.0);
    CHECK(rep.upper_gap > 0.0);
    CHECK(certify_spacelike(mods, 400, 16).pass);
  }
}

TEST_CASE("a corrupted blend is rejected") {
  const auto p = new_params(0.9);
  const auto c = default_constants(p);
  CHECK_THROWS_AS(build_mod_functions(p, c.delta_H, c.delta_BL, nullptr, {}, 5.0), KerrError);
  try {
    build_mod_functions(p, c.delta_H, c.delta_BL, nullptr, {}, 5.0);
  } catch (const KerrError& e) {
    CHECK(e.code() == ErrorCode::BlendInfeasible);
  }
}

TEST_CASE("clustered grid") {
  const auto g = clustered_grid(2.0, 10.0, 1e-3, 50);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == doctest::Approx(2.0));
  CHECK(g.back() == doctest::Approx(10.0));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(g[1] - g[0] < g[49] - g[48]);
}

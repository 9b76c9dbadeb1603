#include <doctest.h>

#include "kerrlab/errors.hpp"
#include "kerrlab/radial_wave.hpp"

#include <cmath>

using namespace kerrlab;

TEST_CASE("tortoise coordinate against quadrature") {
  // mpmath quadrature of (r²+a²)/Δ from 3m
  const auto p = new_params(0.9);
  CHECK(tortoise(p, 1.5) == doctest::Approx(-10.785136265174302).epsilon(1e-12));
  CHECK(tortoise(p, 2.0) == doctest::Approx(-3.6754594119738213).epsilon(1e-12));
  CHECK(tortoise(p, 5.0) == doctest::Approx(3.937320555260981).epsilon(1e-12));
  CHECK(tortoise(p, 12.0) == doctest::Approx(13.290976918405939).epsilon(1e-12));
  CHECK(tortoise(new_params(0.0), 4.0) == doctest::Approx(2.386294361119891).epsilon(1e-13));
  CHECK(tortoise(p, 3.0) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(tortoise(p, p.r_plus), KerrError);
}

TEST_CASE("tortoise inversion round trip") {
  for (double a : {0.0, 0.9}) {
    const auto p = new_params(a);
    for (double rs : {-200.0, -30.0, -1.0, 0.0, 4.0, 250.0})
      CHECK(tortoise_from_gap(p, inverse_tortoise_gap(p, rs)) ==
            doctest::Approx(rs).epsilon(1e-12).scale(1.0));
    for (double rs : {-1.0, 0.0, 4.0, 250.0})
      CHECK(tortoise(p, inverse_tortoise(p, rs)) == doctest::Approx(rs).epsilon(1e-11).scale(1.0));
    const double x = inverse_tortoise_gap(p, -200.0);
    CHECK(x > 0.0);
    CHECK(x < 1e-20);
  }
}

TEST_CASE("scattering against the independent ODE integration") {
  struct Case {
    double a;
    int m_az;
    double omega, R2, T2;
  };
  // scipy DOP853 in ln(r - r₊) with a WKB split at r = 3000
  const Case cases[] = {
      {0.0, 0, 0.5, 0.000461933570390324, 0.9995380664483966},
      {0.9, 1, -0.15, 1.002631617834865, 0.0024158871177259},
      {0.9, 1, 0.4, 0.0024073266119933935, 0.5593497953898433},
  };
  for (const auto& c : cases) {
    CAPTURE(c.omega);
    const auto p = new_params(c.a);
    const ModeSpec mode{c.m_az, std::sqrt(2.0)};
    const auto res = scattering_oracle(p, mode, c.omega);
    CHECK(res.R2 == doctest::Approx(c.R2).epsilon(1e-6));
    CHECK(res.T2 == doctest::Approx(c.T2).epsilon(1e-6));
    CHECK(res.flux_residual < 1e-8);
    CHECK(res.superradiant == (c.omega * res.k < 0.0));
  }
}

TEST_CASE("mode validation") {
  CHECK_THROWS_AS(validate_mode({2, 1.0}), KerrError);
  CHECK_NOTHROW(validate_mode({1, 1.0}));
  CHECK_THROWS_AS(scattering_oracle(new_params(0.0), {0, 1.0}, 0.0), KerrError);
}

TEST_CASE("evolution guards") {
  const auto p = new_params(0.0);
  EvolveOptions opt;
  opt.grid = {-20.0, 20.0, 0.1, 1.2};
  opt.T_final = 1.0;
  const auto st = packet_state(p, opt.grid, {});
  CHECK_THROWS_AS(evolve(p, {0, 1.0}, st, opt), KerrError);
}

TEST_CASE("reflecting Schwarzschild run conserves energy") {
  const auto p = new_params(0.0);
  EvolveOptions opt;
  opt.grid = {-40.0, 40.0, 0.1, 0.5};
  opt.T_final = 60.0;
  opt.boundary = BoundaryKind::Reflecting;
  opt.record_every = 50;
  const GaussianPacket pk{0.0, 3.0, 0.5, -1, 1.0};
  const auto res = evolve(p, {0, std::sqrt(2.0)}, packet_state(p, opt.grid, pk), opt);
  const double E0 = res.series.front().E;
  REQUIRE(E0 > 0.0);
  for (const auto& d : res.series) CHECK(std::fabs(d.E - E0) / E0 < 1e-6);
}

TEST_CASE("absorbing boundaries drain energy") {
  const auto p = new_params(0.0);
  EvolveOptions opt;
  opt.grid = {-30.0, 30.0, 0.1, 0.5};
  opt.T_final = 120.0;
  opt.record_every = 100;
  const GaussianPacket pk{0.0, 2.0, 1.0, 1, 1.0};
  const auto res = evolve(p, {0, 1.0}, packet_state(p, opt.grid, pk), opt);
  CHECK(res.series.back().E < 1e-3 * res.series.front().E);
  for (std::size_t i = 1; i < res.series.size(); ++i)
    CHECK(res.series[i].E <= res.series[i - 1].E * (1.0 + 1e-9));
}

TEST_CASE("second-order spatial convergence") {
  const auto p = new_params(0.0);
  const ModeSpec mode{0, std::sqrt(2.0)};
  const GaussianPacket pk{0.0, 3.0, 0.5, -1, 1.0};
  auto run = [&](double h) {
    EvolveOptions opt;
    opt.grid = {-40.0, 40.0, h, 0.4};
    opt.T_final = 8.0;
    opt.record_every = 1 << 20;
    return evolve(p, mode, packet_state(p, opt.grid, pk), opt).final_state.u;
  };
  const auto u1 = run(0.2), u2 = run(0.1), u4 = run(0.05);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    e1 = std::max(e1, std::abs(u1[i] - u2[2 * i]));
    e2 = std::max(e2, std::abs(u2[2 * i] - u4[4 * i]));
  }
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.8);
  CHECK(order < 2.3);
}

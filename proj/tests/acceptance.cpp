// Acceptance driver: one PASS/FAIL line per criterion, exit status 0 only if all pass.
// Usage: kerrlab_acceptance [criterion ...]   (default: 1..7)

#include "kerrlab/geometry.hpp"
#include "kerrlab/multipliers.hpp"
#include "kerrlab/radial_wave.hpp"
#include "kerrlab/suites.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace kerrlab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) detail += " [x]";
  }
};

ModFunctions default_mods(const BlackHoleParams& p) {
  const auto c = default_constants(p);
  return build_mod_functions(p, c.delta_H, c.delta_BL);
}

RegimeSettings fitted_settings(const BlackHoleParams& p) {
  const auto s0 = make_regime_settings(p, 0.1, 0.0);
  const auto fit = search_delta_F(p, s0.r_inner, 20.0, 20000, 7);
  return make_regime_settings(p, fit.delta_F, fit.theta);
}

const std::vector<double> kSpins = {0.0, 0.3, 0.6, 0.9, 0.99};

Verdict geometry() {
  Verdict v;
  double id = 0.0, det = 0.0, gtt = -1e300;
  bool spacelike = true, blends = true;
  for (double a : kSpins) {
    const auto p = new_params(a);
    const auto rep = geometry_suite(p, default_mods(p), 10000, 101);
    for (const auto& c : rep.charts) {
      id = std::max(id, c.max_identity_defect);
      det = std::max(det, c.max_det_error);
    }
    spacelike = spacelike && rep.spacelike.pass;
    blends = blends && rep.blends.pass;
    gtt = std::max(gtt, rep.spacelike.max_relative_gtt);
  }
  v.require(id < 1e-10, fmt::format("max|g·ginv-I|={:.2e}", id));
  v.require(det < 1e-9, fmt::format("det rel err={:.2e}", det));
  v.require(spacelike, fmt::format("g^ττ<0 (max rel {:.2e})", gtt));
  v.require(blends, "blends certified");
  return v;
}

Verdict potential() {
  Verdict v;
  double rmax = 0.0, r3 = 0.0, hz = 0.0, fd = 0.0;
  long without = 0;
  for (double a : kSpins) {
    const auto rep = potential_suite(new_params(a), 100000, 10000, 202);
    rmax = std::max(rmax, rep.max_rmax);
    if (a == 0.0) r3 = rep.rmax_schwarzschild_error;
    hz = std::max(hz, rep.horizon_identity_error);
    fd = std::max(fd, rep.derivative_error);
    without += rep.without_max;
  }
  v.require(r3 < 1e-8, fmt::format("|r_max-3m|={:.1e} at a=0", r3));
  v.require(rmax <= 8.0, fmt::format("max r_max={:.4f}m", rmax));
  v.require(hz < 1e-12, fmt::format("horizon identity={:.1e}", hz));
  v.require(fd < 1e-6, fmt::format("dV/dr vs FD={:.1e}", fd));
  v.detail += fmt::format("; {} samples without a barrier top", without);
  return v;
}

Verdict superradiance() {
  Verdict v;
  for (double a : {0.5, 0.9, 0.96}) {
    const auto rep = superradiance_suite(new_params(a), 100000, 303);
    v.require(rep.pass && rep.min_margin > 0.0,
              fmt::format("a={}: min margin={:.3e}", a, rep.min_margin));
  }
  return v;
}

Verdict symbols() {
  Verdict v;
  double cur = 0.0, fd = 0.0, flux = 0.0, s2 = 0.0, con = 0.0;
  for (double a : kSpins) {
    const auto p = new_params(a);
    const auto rep = symbol_suite(p, default_mods(p), 10000, 404);
    cur = std::max(cur, rep.current_error);
    fd = std::max(fd, rep.current_fd_error);
    flux = std::max(flux, rep.flux_error);
    s2 = std::max(s2, rep.s2_error);
    con = std::max(con, rep.contraction_error);
  }
  v.require(cur < 1e-8, fmt::format("currents={:.1e}", cur));
  v.require(fd < 1e-5, fmt::format("currents(FD)={:.1e}", fd));
  v.require(flux < 1e-8, fmt::format("fluxes={:.1e}", flux));
  v.require(s2 < 1e-10, fmt::format("S2/S2_BL={:.1e}", s2));
  v.require(con < 1e-10, fmt::format("contraction={:.1e}", con));
  return v;
}

Verdict certification() {
  Verdict v;
  for (double a : {0.0, 0.5, 0.9, 0.96}) {
    const auto p = new_params(a);
    CertifyOptions opt;  // default 2000×200×200 grid
    const auto out = certify_all(p, default_mods(p), opt);
    bool varpi = true;
    for (const auto& r : out.boundary.regimes)
      if (r.samples > 0 && r.min_varpi_radicand < 0.0) varpi = false;
    v.require(out.pass && out.bulk.c_min > 0.0 && out.bulk.monotone && out.boundary.pass && varpi,
              fmt::format("a={}: c_min={:.2e} coarse={:.2e} boundary={}", a, out.bulk.c_min,
                          out.bulk.c_min_coarse, out.boundary.pass ? "ok" : "fail"));
  }
  return v;
}

Verdict solver() {
  Verdict v;
  const ModeSpec l2{0, std::sqrt(2.0)};

  // (i) closed cavity, so the discrete energy is conserved up to time stepping error
  {
    const auto p = new_params(0.0);
    EvolveOptions o;
    o.grid = {-60.0, 60.0, 0.05, 0.5};
    o.T_final = 200.0;
    o.boundary = BoundaryKind::Reflecting;
    o.record_every = 100;
    const auto res = evolve(p, l2, packet_state(p, o.grid, {0.0, 3.0, 1.0, 0, 1.0}), o);
    const double E0 = res.series.front().E;
    double drift = 0.0;
    for (const auto& d : res.series) drift = std::max(drift, std::fabs(d.E - E0) / E0);
    v.require(drift < 1e-6, fmt::format("(i) drift={:.1e}", drift));
  }

  // (ii)+(iii) scans
  {
    const auto p0 = new_params(0.0);
    std::vector<double> w0;
    for (int i = 1; i <= 40; ++i) w0.push_back(0.025 * i);
    const auto s0 = scattering_scan(p0, l2, w0);
    const auto p9 = new_params(0.9);
    const ModeSpec m1{1, std::sqrt(2.0)};
    std::vector<double> w9;
    for (int i = 1; i <= 19; ++i) w9.push_back(-p9.omega_H * i / 20.0);
    for (int i = 1; i <= 20; ++i) w9.push_back(0.05 * i);
    const auto s9 = scattering_scan(p9, m1, w9);
    double res = 0.0, r2max0 = 0.0, r2max9 = 0.0;
    for (const auto& s : s0) {
      res = std::max(res, s.flux_residual);
      r2max0 = std::max(r2max0, s.R2);
    }
    for (const auto& s : s9) {
      res = std::max(res, s.flux_residual);
      if (s.superradiant) r2max9 = std::max(r2max9, s.R2);
    }
    v.require(res < 1e-6, fmt::format("(ii) flux residual={:.1e}", res));
    v.require(r2max0 <= 1.0, fmt::format("(iii) a=0 max|R|²={:.6f}", r2max0));
    v.require(r2max9 > 1.0, fmt::format("a=0.9 max|R|²={:.6f}", r2max9));
  }

  // (iv) transmitted spectrum of a time-domain packet against the oracle
  {
    const auto p = new_params(0.0);
    const double w0 = 0.3, sigma = 4.0;
    std::vector<double> om;
    for (int i = -4; i <= 4; ++i) om.push_back(w0 + i * 0.125 / sigma);
    const auto rows = transmission_comparison(p, l2, {50.0, sigma, w0, -1, 1.0},
                                              {-100.0, 80.0, 0.05, 0.5}, -50.0, 200.0, om);
    double err = 0.0;
    for (const auto& r : rows) err = std::max(err, r.relative_error);
    v.require(err < 0.05, fmt::format("(iv) |T| mismatch={:.2f}%", 100.0 * err));
  }

  // (v) packet parked on the photon sphere
  {
    const auto p = new_params(0.0);
    const double L2 = 200.0;
    const ModeSpec mode{0, std::sqrt(L2)};
    EvolveOptions o;
    o.grid = {-150.0, 450.0, 0.05, 0.5};
    o.T_final = 400.0;
    o.record_every = 200;
    const auto rows = morawetz_experiment(p, mode, {{0.0, 1.16, std::sqrt(L2 / 27.0), 0, 1.0}},
                                          fitted_settings(p), o);
    v.require(rows[0].trapping_factor > 3.0,
              fmt::format("(v) M_plain/M={:.2f}", rows[0].trapping_factor));
  }
  return v;
}

Verdict cover() {
  Verdict v;
  for (double a : {0.0, 0.5, 0.9, 0.96}) {
    const auto p = new_params(a);
    const auto rep = cover_suite(p, fitted_settings(p), 1000000, 707);
    v.require(rep.uncovered == 0 && rep.superradiant_outside_SR == 0 &&
                  rep.max_partition_defect < 1e-12,
              fmt::format("a={}: uncovered={} SR-escapes={} Σχ²-1={:.1e}", a, rep.uncovered,
                          rep.superradiant_outside_SR, rep.max_partition_defect));
  }
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "geometry", 30.0, geometry},
      {2, "potential", 60.0, potential},
      {3, "superradiance not trapped", 60.0, superradiance},
      {4, "symbol identities", 60.0, symbols},
      {5, "multiplier certification", 900.0, certification},
      {6, "solver physics", 600.0, solver},
      {7, "regime cover", 60.0, cover},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  bool ok = true;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(dt < c.budget_s, fmt::format("{:.1f}s of {:.0f}s", dt, c.budget_s));
    fmt::print("criterion {} {}: {}  {}\n", c.id, c.name, v.pass ? "PASS" : "FAIL", v.detail);
    std::fflush(stdout);
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}

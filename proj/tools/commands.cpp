#include "commands.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/radial_wave.hpp"
#include "kerrlab/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string_view>

namespace kerrlab::cli {

using ojson = nlohmann::ordered_json;

namespace {

// JSON has no infinities; keep them readable instead of collapsing to null.
ojson num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ojson xi_json(const FrequencyTriplet& xi) { return ojson::array({xi.xi_tau, xi.xi_phi, xi.Lambda}); }

std::string csv_number(double x) { return fmt::format("{}", x); }

void write_file(const Context& ctx, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (ctx.out_dir / name).string());
  out << text;
}

// Writes <command>.json into the output directory and echoes it on stdout.
int finish(const Context& ctx, const std::string& command, ojson report, bool pass) {
  ojson doc;
  doc["command"] = command;
  doc["schema"] = 1;
  doc["mass"] = ctx.cfg.mass;
  doc["spin"] = ctx.cfg.spin;
  doc["seed"] = ctx.cfg.seed;
  doc["pass"] = pass;
  for (auto& [k, v] : report.items()) doc[k] = v;
  const std::string text = doc.dump(2) + "\n";
  write_file(ctx, command + ".json", text);
  std::cout << text;
  return pass ? kPass : kCheckFailure;
}

int failure(const Context& ctx, const std::string& command, const KerrError& err,
            ojson worst_point = ojson::object()) {
  ojson rep;
  rep["error"] = std::string(to_string(err.code()));
  rep["message"] = err.what();
  rep["worst_point"] = std::move(worst_point);
  finish(ctx, command, rep, false);
  return kCheckFailure;
}

BlackHoleParams params(const RunConfig& cfg) {
  try {
    new_params(cfg.spin * cfg.mass, cfg.mass);
    return new_params(cfg.spin, 1.0);
  } catch (const KerrError& e) {
    throw ConfigError(e.what());
  }
}

SmallConstants small_constants(const RunConfig& cfg, const BlackHoleParams& p) {
  SmallConstants sc = default_constants(p);
  if (cfg.delta_BL) sc.delta_BL = *cfg.delta_BL;
  if (cfg.delta_H) sc.delta_H = *cfg.delta_H;
  sc.delta_H_prime = 1.5 * sc.delta_H;
  constexpr double slack = 1.0 + 1e-12;
  if (sc.delta_H > sc.delta_BL / 5.0 * slack || sc.delta_BL > (1.0 - p.a / p.m) / 5.0 * slack)
    throw ConfigError("constants must satisfy δ_H ≤ δ_BL/5 and δ_BL ≤ (1-a/m)/5");
  return sc;
}

ModFunctions modifiers(const RunConfig& cfg, const BlackHoleParams& p) {
  const SmallConstants sc = small_constants(cfg, p);
  return build_mod_functions(p, sc.delta_H, sc.delta_BL);
}

RegimeSettings settings(const RunConfig& cfg, const BlackHoleParams& p, const ModFunctions& mods,
                        ojson& rep) {
  const double r_inner = p.r_plus * (1.0 + 1.5 * mods.delta_H());
  double dF, th;
  if (cfg.delta_F) {
    dF = *cfg.delta_F;
    th = cfg.theta.value_or(dF / 4.0);
  } else {
    const NonTrappingFit fit = search_delta_F(p, r_inner, cfg.R, cfg.fit_samples, cfg.seed);
    if (!fit.success) throw KerrError(ErrorCode::ConstantSearchFailed, "no admissible δ_F");
    dF = fit.delta_F;
    th = cfg.theta.value_or(fit.theta);
  }
  rep["delta_F"] = dF;
  rep["theta"] = th;
  return make_regime_settings(p, dF, th, cfg.R);
}

ojson constants_json(const MultiplierConstants& c) {
  ojson j;
  j["A"] = c.A;
  j["B"] = c.B;
  j["c_prime"] = c.c_prime;
  j["delta0"] = c.delta0;
  j["C2"] = c.C2;
  j["c_y"] = c.c_y;
  j["phi0"] = c.phi0;
  j["eps"] = c.eps;
  j["lambda"] = c.lambda;
  j["h1_scale"] = c.h1_scale;
  return j;
}

ojson grid_json(const CertGrid& g) {
  ojson j;
  j["n_r"] = g.n_r;
  j["n_alpha"] = g.n_alpha;
  j["n_beta"] = g.n_beta;
  return j;
}

ojson packet_json(const GaussianPacket& pk) {
  ojson j;
  j["center"] = pk.center;
  j["width"] = pk.width;
  j["omega0"] = pk.omega0;
  j["direction"] = pk.direction < 0 ? "in" : pk.direction > 0 ? "out" : "standing";
  j["amplitude"] = pk.amplitude;
  return j;
}

EvolveOptions evolve_options(const RunConfig& cfg) {
  EvolveOptions o;
  o.grid = cfg.wave_grid;
  o.T_final = cfg.T_final;
  o.boundary = cfg.boundary;
  o.record_every = cfg.record_every;
  return o;
}

void check_mode(const RunConfig& cfg) {
  try {
    validate_mode(cfg.mode);
  } catch (const KerrError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

int cmd_geom_check(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  const SmallConstants sc = small_constants(cfg, p);
  ModFunctions mods;
  BlendReport blend;
  try {
    mods = build_mod_functions(p, sc.delta_H, sc.delta_BL, &blend, {}, ctx.corrupt_blend);
  } catch (const KerrError& e) {
    ojson wp;
    wp["r"] = blend.worst_r;
    wp["theta"] = blend.worst_theta;
    wp["lower_gap"] = num(blend.lower_gap);
    wp["upper_gap"] = num(blend.upper_gap);
    return failure(ctx, "geom-check", e, wp);
  }
  const GeometrySuiteReport g = geometry_suite(p, mods, cfg.geometry_samples, cfg.seed);
  ojson rep;
  rep["delta_H"] = sc.delta_H;
  rep["delta_BL"] = sc.delta_BL;
  rep["samples_per_chart"] = g.samples;
  const char* names[] = {"boyer_lindquist", "ingoing_ef", "normalized"};
  ojson charts = ojson::array();
  double worst_ratio = -1.0;
  ojson wp;
  for (int i = 0; i < 3; ++i) {
    const ChartCheck& c = g.charts[i];
    ojson j;
    j["chart"] = names[i];
    j["pass"] = c.max_identity_defect < 1e-10 && c.max_det_error < 1e-9;
    j["max_identity_defect"] = c.max_identity_defect;
    j["max_det_error"] = c.max_det_error;
    j["worst_r"] = c.worst_r;
    j["worst_theta"] = c.worst_theta;
    charts.push_back(j);
    const double ratio = std::max(c.max_identity_defect / 1e-10, c.max_det_error / 1e-9);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      wp = {{"check", std::string("chart:") + names[i]}, {"r", c.worst_r}, {"theta", c.worst_theta}};
    }
  }
  rep["charts"] = charts;
  rep["blends"] = {{"pass", g.blends.pass},
                   {"lower_gap", num(g.blends.lower_gap)},
                   {"upper_gap", num(g.blends.upper_gap)},
                   {"worst_r", g.blends.worst_r},
                   {"worst_theta", g.blends.worst_theta}};
  rep["spacelike"] = {{"pass", g.spacelike.pass},
                      {"max_relative_gtt", num(g.spacelike.max_relative_gtt)},
                      {"worst_r", g.spacelike.worst_r},
                      {"worst_theta", g.spacelike.worst_theta}};
  if (!g.spacelike.pass)
    wp = {{"check", "spacelike"}, {"r", g.spacelike.worst_r}, {"theta", g.spacelike.worst_theta}};
  if (!g.blends.pass)
    wp = {{"check", "blends"}, {"r", g.blends.worst_r}, {"theta", g.blends.worst_theta}};
  rep["worst_point"] = wp;
  return finish(ctx, "geom-check", rep, g.pass);
}

int cmd_potential_scan(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  for (const auto& xi : cfg.scan_xi)
    if (!admissible(p, xi))
      throw ConfigError(fmt::format("inadmissible Ξ = ({}, {}, {})", xi.xi_tau, xi.xi_phi, xi.Lambda));
  const double lo = cfg.scan_r_from.value_or(p.r_plus * 1.01);
  const double hi = cfg.scan_r_to;
  if (!(lo > p.r_plus) || !(hi > lo)) throw ConfigError("potential: need r₊ < r_from < r_to");

  ojson crit_list = ojson::array();
  for (std::size_t i = 0; i < cfg.scan_xi.size(); ++i) {
    const FrequencyTriplet& xi = cfg.scan_xi[i];
    std::string csv = "r,V,dVdr\n";
    for (int k = 0; k < cfg.scan_points; ++k) {
      const double r = lo + (hi - lo) * double(k) / double(cfg.scan_points - 1);
      csv += csv_number(r) + "," + csv_number(potential_V(p, r, xi)) + "," +
             csv_number(dV_dr(p, r, xi)) + "\n";
    }
    const std::string file = fmt::format("potential_{}.csv", i);
    write_file(ctx, file, csv);
    const CriticalPointReport cr = critical_points(p, xi);
    ojson j;
    j["xi"] = xi_json(xi);
    j["file"] = file;
    j["kind"] = cr.kind == CriticalCase::UniqueMax     ? "unique_max"
                : cr.kind == CriticalCase::MinThenMax ? "min_then_max"
                                                      : "strictly_decreasing";
    j["r_min"] = cr.r_min ? ojson(*cr.r_min) : ojson(nullptr);
    j["r_max"] = cr.r_max ? ojson(*cr.r_max) : ojson(nullptr);
    j["V_at_max"] = cr.V_at_max ? ojson(*cr.V_at_max) : ojson(nullptr);
    crit_list.push_back(j);
  }
  ojson rep;
  rep["r_from"] = lo;
  rep["r_to"] = hi;
  rep["points"] = cfg.scan_points;
  rep["critical_points"] = crit_list;
  return finish(ctx, "potential-scan", rep, true);
}

int cmd_regimes_cover(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  const ModFunctions mods = modifiers(cfg, p);
  ojson rep;
  const RegimeSettings s = settings(cfg, p, mods, rep);
  const CoverSuiteReport c = cover_suite(p, s, cfg.cover_samples, cfg.seed, cfg.workers);
  rep["samples"] = c.samples;
  rep["uncovered"] = c.uncovered;
  rep["superradiant_outside_SR"] = c.superradiant_outside_SR;
  rep["max_partition_defect"] = c.max_partition_defect;
  ojson counts;
  for (int j = 0; j < kRegimeCount; ++j) counts[regime_name(j)] = c.counts[j];
  rep["dominant_counts"] = counts;
  rep["worst_point"] = {{"xi", xi_json(c.worst_xi)}};
  return finish(ctx, "regimes-cover", rep, c.pass);
}

int cmd_symbols_verify(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  const ModFunctions mods = modifiers(cfg, p);
  const SymbolSuiteReport s = symbol_suite(p, mods, cfg.symbol_samples, cfg.seed);
  ojson rep;
  rep["samples"] = s.samples;
  rep["current_error"] = s.current_error;
  rep["current_fd_error"] = s.current_fd_error;
  rep["flux_error"] = s.flux_error;
  rep["s2_error"] = s.s2_error;
  rep["contraction_error"] = s.contraction_error;
  rep["worst_point"] = {{"check", s.worst_check}, {"r", s.worst_r}, {"xi", xi_json(s.worst_xi)}};
  return finish(ctx, "symbols-verify", rep, s.pass);
}

int cmd_certify(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  const ModFunctions mods = modifiers(cfg, p);
  CertifyOptions opt;
  opt.delta_F = cfg.delta_F;
  opt.theta = cfg.theta;
  opt.R = cfg.R;
  opt.fit_samples = cfg.fit_samples;
  opt.seed = cfg.seed;
  opt.grid = cfg.grid;
  opt.grid.workers = cfg.workers;
  opt.boundary_alpha = cfg.boundary_alpha;
  opt.boundary_beta = cfg.boundary_beta;
  opt.fixed = cfg.multipliers;
  opt.corrupt_h = ctx.corrupt_h;
  const CertifyOutcome out = certify_all(p, mods, opt);

  ojson rep;
  rep["delta_F"] = out.fit.delta_F;
  rep["theta"] = out.fit.theta;
  rep["searched"] = out.searched;
  rep["probes"] = out.probes;
  const ojson constants = constants_json(out.constants);
  const ojson grid = grid_json(out.bulk.grid);
  ojson reports = ojson::array();
  {
    ojson b;
    b["regime"] = "all";
    b["pass"] = out.bulk.pass;
    b["c_min"] = num(out.bulk.c_min);
    b["c_min_coarse"] = num(out.bulk.c_min_coarse);
    b["monotone"] = out.bulk.monotone;
    b["d_min"] = num(out.bulk.d_min);
    b["worst_r"] = out.bulk.worst_r;
    b["worst_xi"] = xi_json(out.bulk.worst_xi);
    b["worst_regime"] = out.bulk.worst_regime >= 0 ? regime_name(out.bulk.worst_regime) : "none";
    b["grid"] = grid;
    b["constants"] = constants;
    reports.push_back(b);
  }
  for (int j = 0; j < kRegimeCount; ++j) {
    const double cm = out.bulk.c_min_by_regime[j];
    if (!(cm < std::numeric_limits<double>::infinity())) continue;
    ojson b;
    b["regime"] = regime_name(j);
    b["pass"] = cm > 1e-10;
    b["c_min"] = num(cm);
    b["worst_r"] = out.bulk.worst_r_by_regime[j];
    b["worst_xi"] = xi_json(out.bulk.worst_xi_by_regime[j]);
    b["grid"] = grid;
    b["constants"] = constants;
    reports.push_back(b);
  }
  rep["bulk"] = reports;
  ojson bnd = ojson::array();
  for (const auto& rr : out.boundary.regimes) {
    ojson b;
    b["regime"] = regime_name(rr.regime);
    b["pass"] = rr.pass;
    b["samples"] = rr.samples;
    b["C_fit"] = num(rr.C_fit);
    b["C_fit_half"] = num(rr.C_fit_half);
    b["min_rho_radicand"] = num(rr.min_rho_radicand);
    b["min_varpi_radicand"] = num(rr.min_varpi_radicand);
    b["worst_xi"] = xi_json(rr.worst_xi);
    b["worst_xi_r"] = rr.worst_xi_r;
    bnd.push_back(b);
  }
  rep["boundary"] = bnd;
  rep["message"] = out.message;
  ojson wp;
  if (!out.bulk.pass || out.boundary.pass) {
    wp["kind"] = "bulk";
    wp["r"] = out.bulk.worst_r;
    wp["xi"] = xi_json(out.bulk.worst_xi);
    wp["value"] = num(out.bulk.c_min);
  } else {
    for (const auto& rr : out.boundary.regimes)
      if (!rr.pass) {
        wp["kind"] = std::string("boundary:") + regime_name(rr.regime);
        wp["xi"] = xi_json(rr.worst_xi);
        wp["xi_r"] = rr.worst_xi_r;
        break;
      }
  }
  rep["worst_point"] = wp;
  return finish(ctx, "certify", rep, out.pass);
}

int cmd_wave_evolve(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  check_mode(cfg);
  const EvolveOptions o = evolve_options(cfg);
  EvolveResult res;
  try {
    res = evolve(p, cfg.mode, packet_state(p, o.grid, cfg.packet), o);
  } catch (const KerrError& e) {
    if (e.code() == ErrorCode::CFLViolation || e.code() == ErrorCode::NaNDetected)
      return failure(ctx, "wave-evolve", e, {{"cfl", o.grid.cfl}, {"h", o.grid.h}});
    throw;
  }
  std::string csv = "t,E,E_surrogate,M,M_plain,flux_left,flux_right\n";
  for (const auto& d : res.series)
    csv += fmt::format("{},{},{},{},{},{},{}\n", d.t, d.E, d.E_surrogate, d.M, d.M_plain,
                       d.flux_left, d.flux_right);
  write_file(ctx, "wave_evolve.csv", csv);
  const double E0 = res.series.front().E;
  double sup = 0.0;
  for (const auto& d : res.series) sup = std::max(sup, d.E / E0);
  ojson rep;
  rep["mode"] = {{"m_az", cfg.mode.m_az}, {"Lambda0", cfg.mode.Lambda0}};
  rep["packet"] = packet_json(cfg.packet);
  rep["steps"] = res.steps;
  rep["E0"] = E0;
  rep["sup_energy_ratio"] = sup;
  rep["final_energy_ratio"] = res.series.back().E / E0;
  rep["M_ratio"] = res.series.back().M / E0;
  rep["M_plain_ratio"] = res.series.back().M_plain / E0;
  rep["series_file"] = "wave_evolve.csv";
  return finish(ctx, "wave-evolve", rep, true);
}

int cmd_wave_scatter(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  check_mode(cfg);
  std::vector<double> omegas = cfg.omegas;
  if (omegas.empty())
    for (int i = 1; i <= 20; ++i) omegas.push_back(0.05 * i);
  for (double w : omegas)
    if (w == 0.0) throw ConfigError("wave: ω = 0 has no scattering data");
  std::vector<ScatterResult> rows;
  try {
    rows = scattering_scan(p, cfg.mode, omegas, {}, cfg.workers);
  } catch (const KerrError& e) {
    if (e.code() == ErrorCode::StiffFailure) return failure(ctx, "wave-scatter", e);
    throw;
  }
  ojson table = ojson::array();
  double max_res = 0.0;
  int amplified = 0;
  bool signs_ok = true;
  ojson wp = ojson::object();
  double worst = -1.0;
  for (const auto& s : rows) {
    ojson j;
    j["omega"] = s.omega;
    j["k"] = s.k;
    j["re_R"] = s.R.real();
    j["im_R"] = s.R.imag();
    j["R2"] = s.R2;
    j["T2"] = s.T2;
    j["flux_residual"] = s.flux_residual;
    j["superradiant"] = s.superradiant;
    j["admissible"] = s.admissible;
    j["amplified"] = s.R2 > 1.0;
    table.push_back(j);
    max_res = std::max(max_res, s.flux_residual);
    if (s.R2 > 1.0) ++amplified;
    // outside the band the flux relation forces |R|² ≤ 1, inside it forces |R|² ≥ 1
    const bool sign_ok = s.superradiant ? s.R2 >= 1.0 - 1e-9 : s.R2 <= 1.0 + 1e-9;
    signs_ok = signs_ok && sign_ok;
    const double badness = std::max(s.flux_residual / 1e-6, sign_ok ? 0.0 : 2.0);
    if (badness > worst) {
      worst = badness;
      wp = {{"omega", s.omega}, {"R2", s.R2}, {"flux_residual", s.flux_residual}};
    }
  }
  write_file(ctx, "wave_scatter_table.json", table.dump(2) + "\n");
  ojson rep;
  rep["mode"] = {{"m_az", cfg.mode.m_az}, {"Lambda0", cfg.mode.Lambda0}};
  rep["omega_H"] = p.omega_H;
  rep["count"] = rows.size();
  rep["max_flux_residual"] = max_res;
  rep["amplified_count"] = amplified;
  rep["table"] = table;
  rep["worst_point"] = wp;
  return finish(ctx, "wave-scatter", rep, max_res < 1e-6 && signs_ok);
}

int cmd_wave_morawetz(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const BlackHoleParams p = params(cfg);
  check_mode(cfg);
  const ModFunctions mods = modifiers(cfg, p);
  ojson rep;
  const RegimeSettings s = settings(cfg, p, mods, rep);
  std::vector<GaussianPacket> packets = cfg.packets;
  if (packets.empty()) packets.push_back(cfg.packet);
  std::vector<MorawetzRow> rows;
  try {
    rows = morawetz_experiment(p, cfg.mode, packets, s, evolve_options(cfg), cfg.workers);
  } catch (const KerrError& e) {
    if (e.code() == ErrorCode::CFLViolation || e.code() == ErrorCode::NaNDetected)
      return failure(ctx, "wave-morawetz", e);
    throw;
  }
  ojson table = ojson::array();
  for (const auto& r : rows) {
    ojson j;
    j["packet"] = packet_json(r.packet);
    j["r_trap"] = r.r_trap;
    j["sup_energy_ratio"] = r.sup_energy_ratio;
    j["sup_surrogate_ratio"] = r.sup_surrogate_ratio;
    j["M_ratio"] = r.M_ratio;
    j["M_plain_ratio"] = r.M_plain_ratio;
    j["trapping_factor"] = r.trapping_factor;
    table.push_back(j);
  }
  rep["mode"] = {{"m_az", cfg.mode.m_az}, {"Lambda0", cfg.mode.Lambda0}};
  rep["T_final"] = cfg.T_final;
  rep["rows"] = table;
  return finish(ctx, "wave-morawetz", rep, true);
}

}  // namespace kerrlab::cli

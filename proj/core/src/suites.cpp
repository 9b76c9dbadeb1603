#include "kerrlab/suites.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/parallel.hpp"
#include "kerrlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace kerrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqrt_det_error(const Mat4& g, double r, double th, const BlackHoleParams& p) {
  const double expect = p.q2(r, th) * std::sin(th);
  return std::fabs(std::sqrt(std::fabs(determinant(g))) - expect) / expect;
}

void note(ChartCheck& c, double defect, double det_err, double r, double th) {
  if (defect > c.max_identity_defect) {
    c.worst_r = r;
    c.worst_theta = th;
  }
  c.max_identity_defect = std::max(c.max_identity_defect, defect);
  c.max_det_error = std::max(c.max_det_error, det_err);
}

double norm2(const FrequencyTriplet& xi) {
  return xi.xi_tau * xi.xi_tau + xi.xi_phi * xi.xi_phi + xi.Lambda * xi.Lambda;
}

}  // namespace

GeometrySuiteReport geometry_suite(const BlackHoleParams& p, const ModFunctions& mods,
                                   int samples, std::uint64_t seed) {
  GeometrySuiteReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto theta = [&] { return kThetaMin + (std::numbers::pi - 2.0 * kThetaMin) * unit(rng); };
  // r - r₊ log-uniform between 10⁻³r₊ and 50m
  auto outside = [&] {
    return p.r_plus + p.r_plus * 1e-3 * std::pow(50.0 * p.m / (p.r_plus * 1e-3), unit(rng));
  };
  const double r_lo = p.r_plus * (1.0 - mods.delta_H());
  auto regular = [&] { return r_lo + (60.0 * p.m - r_lo) * std::pow(unit(rng), 2.0); };

  for (int i = 0; i < samples; ++i) {
    {
      const double r = outside(), th = theta();
      const auto mc = metric_bl(p, {Chart::BoyerLindquist, {0.0, r, th, 0.0}});
      note(rep.charts[0], max_identity_defect(mc.g, mc.ginv), sqrt_det_error(mc.g, r, th, p), r,
           th);
    }
    {
      const double r = regular(), th = theta();
      const auto mc = metric_ef(p, {Chart::IngoingEF, {0.0, r, th, 0.0}}, mods.delta_H());
      note(rep.charts[1], max_identity_defect(mc.g, mc.ginv), sqrt_det_error(mc.g, r, th, p), r,
           th);
    }
    {
      const double r = regular(), th = theta();
      const auto mc = inverse_metric_normalized(p, mods, {Chart::Normalized, {0.0, r, th, 0.0}});
      note(rep.charts[2], max_identity_defect(mc.g, mc.ginv), sqrt_det_error(mc.g, r, th, p), r,
           th);
    }
  }
  rep.blends = verify_blends(mods);
  rep.spacelike = certify_spacelike(mods);
  rep.pass = rep.blends.pass && rep.spacelike.pass;
  for (const auto& c : rep.charts)
    rep.pass = rep.pass && c.max_identity_defect < 1e-10 && c.max_det_error < 1e-9;
  return rep;
}

PotentialSuiteReport potential_suite(const BlackHoleParams& p, int samples, int fd_samples,
                                     std::uint64_t seed) {
  PotentialSuiteReport rep;
  rep.samples = samples;
  AdmissibleSampler sampler(p, seed);
  for (int i = 0; i < samples; ++i) {
    const auto xi = sampler.next();
    const auto crit = critical_points(p, xi);
    if (!crit.r_max) {
      ++rep.without_max;
      continue;
    }
    if (*crit.r_max > rep.max_rmax) {
      rep.max_rmax = *crit.r_max;
      rep.max_rmax_xi = xi;
    }
    if (p.a == 0.0)
      rep.rmax_schwarzschild_error =
          std::max(rep.rmax_schwarzschild_error, std::fabs(*crit.r_max - 3.0 * p.m));
    const double k = k_plus(p, xi);
    rep.horizon_identity_error = std::max(
        rep.horizon_identity_error, std::fabs(radial_gap(p, p.r_plus, xi) - k * k) / norm2(xi));
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < fd_samples; ++i) {
    const auto xi = sampler.next();
    const double r = p.r_plus * (1.0 + 1e-2) + (50.0 * p.m - p.r_plus) * unit(rng);
    const double exact = dV_dr(p, r, xi);
    const double fd = central_difference([&](double x) { return potential_V(p, x, xi); }, r);
    // the natural size of ∂_rV is |Ξ|²/r³; it keeps the check meaningful near r_max
    const double scale = std::max(std::fabs(exact), 1e-3 * norm2(xi) / (r * r * r));
    const double err = std::fabs(exact - fd) / scale;
    if (err > rep.derivative_error) {
      rep.derivative_error = err;
      rep.worst_derivative_r = r;
      rep.worst_derivative_xi = xi;
    }
  }
  rep.pass = rep.max_rmax <= 8.0 * p.m && rep.rmax_schwarzschild_error < 1e-8 &&
             rep.horizon_identity_error < 1e-12 && rep.derivative_error < 1e-6;
  return rep;
}

SuperradianceSuiteReport superradiance_suite(const BlackHoleParams& p, int samples,
                                             std::uint64_t seed) {
  SuperradianceSuiteReport rep;
  rep.min_margin = kInf;
  if (p.a == 0.0) {
    // the superradiant set is empty
    rep.pass = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (rep.samples < samples) {
    const double xp = normal(rng);
    const double lam = std::fabs(normal(rng));
    // every tenth sample sits on the outer edge -ξ_τξ_φ̃ = ω_Hξ_φ̃²
    const double t = rep.samples % 10 == 0 ? 1.0 : 1.0 - unit(rng);
    FrequencyTriplet xi{-t * p.omega_H * xp, xp, lam};
    if (!(xp != 0.0 && lam > 0.0) || !admissible(p, xi, 0.0)) continue;
    xi = xi.scaled(1.0 / xi.norm());
    ++rep.samples;
    const auto crit = critical_points(p, xi);
    double margin = -kInf;
    if (crit.V_at_max) margin = (*crit.V_at_max - xi.xi_tau * xi.xi_tau) / (xi.Lambda * xi.Lambda);
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.worst_xi = xi;
    }
  }
  rep.pass = rep.min_margin > 0.0;
  return rep;
}

namespace {

// Smooth test profiles with exact derivatives.
struct Profile {
  double c0, c1, k;
  double v(double r) const { return c0 + c1 * std::sin(k * r) / r; }
  double d(double r) const {
    return c1 * (k * std::cos(k * r) * r - std::sin(k * r)) / (r * r);
  }
};

struct Cutoff {
  double center, width;
  double v(double r) const { return 0.5 * (1.0 + std::tanh((r - center) / width)); }
  double d(double r) const {
    const double c = std::cosh((r - center) / width);
    return 0.5 / (width * c * c);
  }
};

}  // namespace

SymbolSuiteReport symbol_suite(const BlackHoleParams& p, const ModFunctions& mods, int samples,
                               std::uint64_t seed) {
  SymbolSuiteReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AdmissibleSampler sampler(p, seed + 1);
  double worst_total = 0.0;

  auto record = [&](double& slot, double err, const char* name, double r,
                    const FrequencyTriplet& xi, double limit) {
    slot = std::max(slot, err);
    if (err / limit > worst_total) {
      worst_total = err / limit;
      rep.worst_r = r;
      rep.worst_xi = xi;
      rep.worst_check = name;
    }
  };

  for (int i = 0; i < samples; ++i) {
    const double r = p.r_plus * (1.0 + 1e-3) + (40.0 * p.m - p.r_plus) * unit(rng);
    const FrequencyTriplet xi = sampler.next().scaled(0.5 + 4.5 * unit(rng));
    PhasePoint pt;
    pt.r = r;
    pt.xi = xi;
    pt.xi_r = (2.0 * unit(rng) - 1.0) * 5.0;
    const double L = p.L(r);
    const double xt = xi_rstar(p, mods, pt);
    const double natural = L * (xt * xt + norm2(xi)) * (1.0 + std::fabs(dV_dr(p, r, xi)));

    const Profile h{0.2 + unit(rng), unit(rng), 0.5 + unit(rng)};
    const Profile y{unit(rng) - 0.5, unit(rng), 0.3 + unit(rng)};
    const Profile f{unit(rng) - 0.5, unit(rng), 0.2 + unit(rng)};
    const Cutoff chi{3.0 + 4.0 * unit(rng), 0.5 + unit(rng)};
    const double A = 1.0 + 10.0 * unit(rng);

    auto rel = [&](double closed, double generic) {
      return std::fabs(closed - generic) / std::max(std::fabs(closed), 1e-3 * natural);
    };

    // exact derivatives
    const double ch = current_h(p, r, xi, xt, h.v(r));
    const double cy = current_y(p, r, xi, xt, y.v(r), y.d(r));
    const double cf = current_f(p, r, xi, xt, f.v(r), f.d(r));
    const double cz = current_z(p, r, xi, xt, chi.d(r), A);
    record(rep.current_error, rel(ch, sigma2_bulk(p, mods, triple_h(p, r, h.v(r)), pt)),
           "current_h", r, xi, 1e-8);
    record(rep.current_error, rel(cy, sigma2_bulk(p, mods, triple_y(p, r, y.v(r), y.d(r)), pt)),
           "current_y", r, xi, 1e-8);
    record(rep.current_error, rel(cf, sigma2_bulk(p, mods, triple_f(p, r, f.v(r), f.d(r)), pt)),
           "current_f", r, xi, 1e-8);
    record(rep.current_error,
           rel(cz, sigma2_bulk(p, mods, triple_z(p, xi, chi.v(r), chi.d(r), A), pt)), "current_z",
           r, xi, 1e-8);

    // finite-difference derivatives of the multiplier triple
    MultiplierTriple ty, tf, tz;
    ty.s0 = [&](double x, const FrequencyTriplet&) { return 2.0 * y.v(x); };
    ty.e0 = [&](double x, const FrequencyTriplet&) { return triple_y(p, x, y.v(x), y.d(x)).e0; };
    tf.s0 = [&](double x, const FrequencyTriplet&) { return 2.0 * f.v(x); };
    tf.e0 = [&](double x, const FrequencyTriplet&) { return triple_f(p, x, f.v(x), f.d(x)).e0; };
    tz.s1 = [&](double x, const FrequencyTriplet& q) {
      return A * (q.xi_tau + chi.v(x) * p.omega_H * q.xi_phi);
    };
    record(rep.current_fd_error, rel(cy, sigma2_bulk(p, mods, ty, pt)), "current_y_fd", r, xi,
           1e-5);
    record(rep.current_fd_error, rel(cf, sigma2_bulk(p, mods, tf, pt)), "current_f_fd", r, xi,
           1e-5);
    record(rep.current_fd_error, rel(cz, sigma2_bulk(p, mods, tz, pt)), "current_z_fd", r, xi,
           1e-5);

    // boundary symbols
    const double S1 = s1_symbol(p, mods, r, xi);
    const double S2 = s2_symbol(p, mods, r, xi);
    const double D = p.Delta(r);
    const double bdr_scale =
        (std::fabs(D) * pt.xi_r * pt.xi_r + 2.0 * std::fabs(S1 * pt.xi_r) + std::fabs(S2) +
         S1 * S1 / L + std::fabs(xi.xi_tau) * (std::fabs(D * pt.xi_r) + std::fabs(S1))) *
        (1.0 + A);
    auto brel = [&](double closed, double generic) {
      return std::fabs(closed - generic) / std::max(std::fabs(closed), 1e-3 * bdr_scale);
    };
    record(rep.flux_error,
           brel(flux_y(p, mods, pt, y.v(r)),
                sigma2_bdr(p, mods, triple_y(p, r, y.v(r), y.d(r)), pt)),
           "flux_y", r, xi, 1e-8);
    record(rep.flux_error,
           brel(flux_f(p, mods, pt, f.v(r)),
                sigma2_bdr(p, mods, triple_f(p, r, f.v(r), f.d(r)), pt)),
           "flux_f", r, xi, 1e-8);
    record(rep.flux_error,
           brel(flux_z(p, mods, pt, chi.v(r), A),
                sigma2_bdr(p, mods, triple_z(p, xi, chi.v(r), chi.d(r), A), pt)),
           "flux_z", r, xi, 1e-8);

    // S₂ against S₂^BL through the r* form of the wave symbol
    const double ws = wave_symbol(p, mods, pt);
    const double ws_scale = std::fabs(D) * pt.xi_r * pt.xi_r + 2.0 * std::fabs(S1 * pt.xi_r) +
                            std::fabs(S2) + norm2(xi) * L;
    record(rep.s2_error, std::fabs(ws - wave_symbol_rstar(p, mods, pt)) / ws_scale, "s2_bl", r,
           xi, 1e-10);

    // wave symbol against the full metric contraction at an extended point
    const double th = kThetaMin + (std::numbers::pi - 2.0 * kThetaMin) * unit(rng);
    const PhasePoint ext = extended_point(p, r, pt.xi_r, xi.xi_tau, xi.xi_phi, th,
                                          (2.0 * unit(rng) - 1.0) * 3.0);
    const double S1e = s1_symbol(p, mods, r, ext.xi);
    const double ext_scale = std::fabs(D) * ext.xi_r * ext.xi_r +
                             2.0 * std::fabs(S1e * ext.xi_r) +
                             std::fabs(s2_symbol(p, mods, r, ext.xi)) + norm2(ext.xi) * L;
    record(rep.contraction_error,
           std::fabs(wave_symbol(p, mods, ext) - metric_contraction(p, mods, ext)) / ext_scale,
           "metric_contraction", r, ext.xi, 1e-10);
  }
  rep.pass = rep.current_error < 1e-8 && rep.current_fd_error < 1e-5 && rep.flux_error < 1e-8 &&
             rep.s2_error < 1e-10 && rep.contraction_error < 1e-10;
  return rep;
}

CoverSuiteReport cover_suite(const BlackHoleParams& p, const RegimeSettings& s, long samples,
                             std::uint64_t seed, unsigned workers) {
  CoverSuiteReport rep;
  rep.samples = samples;
  std::vector<FrequencyTriplet> xs(static_cast<size_t>(samples));
  {
    AdmissibleSampler sampler(p, seed);
    std::mt19937_64 rng(seed + 17);
    std::uniform_real_distribution<double> size(2.0, 20.0);
    for (auto& x : xs) x = sampler.next().scaled(size(rng));
  }

  struct Tile {
    long uncovered = 0, sr_out = 0;
    ArgMin worst;  // stores -defect
    std::array<long, kRegimeCount> counts{};
    std::size_t first_bad = static_cast<std::size_t>(-1);
  };
  const std::size_t tiles = 256;
  std::vector<Tile> acc(tiles);
  parallel_tiles(xs.size(), tiles, resolve_workers(workers),
                 [&](std::size_t b, std::size_t e, std::size_t t) {
                   Tile& T = acc[t];
                   for (std::size_t i = b; i < e; ++i) {
                     const auto rm = classify_regimes(p, xs[i], s);
                     const bool covered = rm.in_SR || rm.in_A || rm.in_T || rm.in_TR;
                     const bool sr_bad = is_superradiant(p, xs[i]) && !rm.in_SR;
                     if (!covered) ++T.uncovered;
                     if (sr_bad) ++T.sr_out;
                     if ((!covered || sr_bad) && T.first_bad == static_cast<std::size_t>(-1))
                       T.first_bad = i;
                     double sum = 0.0;
                     int dom = 0;
                     for (int j = 0; j < kRegimeCount; ++j) {
                       sum += rm.chi[j] * rm.chi[j];
                       if (rm.chi[j] > rm.chi[dom]) dom = j;
                     }
                     T.worst.merge(-std::fabs(sum - 1.0), i);
                     ++T.counts[dom];
                   }
                 });
  ArgMin worst;
  std::size_t first_bad = static_cast<std::size_t>(-1);
  for (const auto& T : acc) {
    rep.uncovered += T.uncovered;
    rep.superradiant_outside_SR += T.sr_out;
    worst.merge(T.worst);
    first_bad = std::min(first_bad, T.first_bad);
    for (int j = 0; j < kRegimeCount; ++j) rep.counts[j] += T.counts[j];
  }
  rep.max_partition_defect = samples > 0 ? -worst.value : 0.0;
  if (first_bad != static_cast<std::size_t>(-1))
    rep.worst_xi = xs[first_bad];
  else if (samples > 0)
    rep.worst_xi = xs[worst.index];
  rep.pass = rep.uncovered == 0 && rep.superradiant_outside_SR == 0 &&
             rep.max_partition_defect <= 1e-12;
  return rep;
}

CertifyOutcome certify_all(const BlackHoleParams& p, const ModFunctions& mods,
                           const CertifyOptions& opt) {
  CertifyOutcome out;
  const double r_inner = p.r_plus * (1.0 + 1.5 * mods.delta_H());
  if (opt.delta_F) {
    out.fit.delta_F = *opt.delta_F;
    out.fit.theta = opt.theta.value_or(*opt.delta_F / 4.0);
    out.fit.success = true;
  } else {
    out.fit = search_delta_F(p, r_inner, opt.R, opt.fit_samples, opt.seed);
    if (!out.fit.success) {
      out.message = "no admissible δ_F on the dyadic ladder";
      return out;
    }
    if (opt.theta) out.fit.theta = *opt.theta;
  }
  out.settings = make_regime_settings(p, out.fit.delta_F, out.fit.theta, opt.R);
  BoundaryReport search_boundary;

  if (opt.fixed) {
    out.constants = *opt.fixed;
  } else {
    SearchOptions so;
    so.final_grid = opt.grid;
    so.probe.workers = opt.grid.workers;
    so.boundary_alpha = opt.boundary_alpha;
    so.boundary_beta = opt.boundary_beta;
    const SearchResult sr = search_constants(p, mods, out.settings, so);
    out.searched = true;
    out.probes = sr.probes;
    out.constants = sr.constants;
    if (!sr.success) {
      out.bulk = sr.bulk;
      out.boundary = sr.boundary;
      out.message = sr.message.empty() ? "constant search failed" : sr.message;
      return out;
    }
    if (opt.corrupt_h == 1.0) out.bulk = sr.bulk;
    search_boundary = sr.boundary;
  }
  out.constants.h1_scale *= opt.corrupt_h;
  if (!out.searched || opt.corrupt_h != 1.0)
    out.bulk = certify_bulk(p, out.settings, out.constants, opt.grid);
  if (out.searched && opt.corrupt_h == 1.0)
    out.boundary = search_boundary;
  else
    out.boundary = certify_boundary(p, mods, out.settings, out.constants, opt.boundary_alpha,
                                    opt.boundary_beta);
  out.pass = out.bulk.pass && out.boundary.pass;
  if (!out.pass) out.message = !out.bulk.pass ? out.bulk.message : out.boundary.message;
  return out;
}

}  // namespace kerrlab

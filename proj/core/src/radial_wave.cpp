#include "kerrlab/radial_wave.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kerrlab {

double tortoise_from_gap(const BlackHoleParams& p, double x) {
  if (!(x > 0.0)) throw KerrError(ErrorCode::BelowHorizon, "r* requested at or below r₊");
  const double m = p.m;
  const double rp = p.r_plus, rm = p.r_minus;
  const double split = rp - rm;
  double rs = x + rp - 3.0 * m + 2.0 * m * rp / split * std::log(x / (3.0 * m - rp));
  if (rm > 0.0) rs -= 2.0 * m * rm / split * std::log((x + split) / (3.0 * m - rm));
  return rs;
}

double tortoise(const BlackHoleParams& p, double r) {
  if (!(r > p.r_plus)) throw KerrError(ErrorCode::BelowHorizon, "r* requested at or below r₊");
  return tortoise_from_gap(p, r - p.r_plus);
}

double inverse_tortoise_gap(const BlackHoleParams& p, double r_star) {
  const double split = p.r_plus - p.r_minus;
  auto F = [&](double s) { return tortoise_from_gap(p, std::exp(s)) - r_star; };
  double lo = -700.0;
  double hi = std::log(std::max(10.0 * p.m, 2.0 * std::fabs(r_star) + 10.0 * p.m));
  if (F(lo) > 0.0) throw KerrError(ErrorCode::BelowHorizon, "r* too negative to invert");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double x = std::exp(s);
    const double slope = p.L(p.r_plus + x) / (x + split);
    s -= F(s) / slope;
  }
  return std::exp(s);
}

double inverse_tortoise(const BlackHoleParams& p, double r_star) {
  return p.r_plus + inverse_tortoise_gap(p, r_star);
}

double ModeSpec::V_c(const BlackHoleParams& p, double r) const {
  const double L = p.L(r);
  return (p.Delta(r) * Lambda0 * Lambda0 - p.a * p.a * m_az * m_az) / (L * L);
}

double ModeSpec::W(const BlackHoleParams& p, double r) const {
  const double L = p.L(r);
  return 4.0 * p.a * p.m * r * m_az / (L * L);
}

void validate_mode(const ModeSpec& mode) {
  if (!(mode.Lambda0 >= 0.0) || mode.Lambda0 * mode.Lambda0 < double(mode.m_az) * mode.m_az)
    throw KerrError(ErrorCode::InvalidArgument, "mode needs Λ₀² ≥ m_az²");
}

WaveState make_state(const BlackHoleParams& p, const WaveGrid& grid) {
  if (!(grid.h > 0.0) || !(grid.rs_right > grid.rs_left))
    throw KerrError(ErrorCode::InvalidArgument, "empty r* grid");
  const int n = static_cast<int>(std::lround((grid.rs_right - grid.rs_left) / grid.h)) + 1;
  WaveState st;
  st.r_star.resize(n);
  st.r.resize(n);
  for (int i = 0; i < n; ++i) {
    st.r_star[i] = grid.rs_left + grid.h * i;
    st.r[i] = inverse_tortoise(p, st.r_star[i]);
  }
  st.u.assign(n, 0.0);
  st.v.assign(n, 0.0);
  return st;
}

WaveState packet_state(const BlackHoleParams& p, const WaveGrid& grid, const GaussianPacket& pk) {
  WaveState st = make_state(p, grid);
  const cplx I(0.0, 1.0);
  // a standing packet has no radial carrier
  const double dir = double(pk.direction);
  for (std::size_t i = 0; i < st.u.size(); ++i) {
    const double x = st.r_star[i] - pk.center;
    const double g = pk.amplitude * std::exp(-x * x / (2.0 * pk.width * pk.width));
    const cplx u = g * std::exp(I * pk.omega0 * dir * st.r_star[i]);
    st.u[i] = u;
    if (pk.direction == 0) {
      st.v[i] = -I * pk.omega0 * u;
    } else {
      // u = F(r* - dir·t): u_t = -dir·u_r*
      const cplx ur = (-x / (pk.width * pk.width) + I * pk.omega0 * dir) * u;
      st.v[i] = -dir * ur;
    }
  }
  return st;
}

namespace {

struct Operator {
  std::vector<double> Vc, W, r;
  double h = 0.0;
  double shift = 0.0;  // m_az ω_H
  BoundaryKind bc = BoundaryKind::Absorbing;

  // Writes (u_t, v_t).
  void apply(const std::vector<cplx>& u, const std::vector<cplx>& v, std::vector<cplx>& du,
             std::vector<cplx>& dv) const {
    const std::size_t n = u.size();
    const cplx I(0.0, 1.0);
    const double ih2 = 1.0 / (h * h);
    du = v;
    for (std::size_t i = 1; i + 1 < n; ++i)
      dv[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * ih2 - Vc[i] * u[i] + I * W[i] * v[i];
    const auto [g0, gN] = boundary_data(u, v);
    dv[0] = 2.0 * (u[1] - u[0]) * ih2 - 2.0 * g0 / h - Vc[0] * u[0] + I * W[0] * v[0];
    dv[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * ih2 + 2.0 * gN / h - Vc[n - 1] * u[n - 1] +
                I * W[n - 1] * v[n - 1];
  }

  // Weak values of ∂_{r*}u at the two ends.
  std::pair<cplx, cplx> boundary_data(const std::vector<cplx>& u,
                                      const std::vector<cplx>& v) const {
    if (bc == BoundaryKind::Reflecting) return {0.0, 0.0};
    const cplx I(0.0, 1.0);
    const std::size_t n = u.size();
    // (∂_t - ∂_{r*} - i m ω_H)u = 0 on the left, (∂_t + ∂_{r*})u = 0 on the right
    return {v[0] - I * shift * u[0], -v[n - 1]};
  }
};

struct Weights {
  std::vector<double> H;
  std::vector<double> deg, plain, mu;
};

WaveDiagnostics diagnose(const Operator& op, const Weights& w, const WaveState& st) {
  const std::size_t n = st.u.size();
  const double h = op.h;
  const cplx I(0.0, 1.0);
  WaveDiagnostics d;
  d.t = st.t;
  for (std::size_t i = 0; i < n; ++i) {
    const double Hi = w.H[i];
    const double u2 = std::norm(st.u[i]);
    const double v2 = std::norm(st.v[i]);
    d.E += Hi * (v2 + op.Vc[i] * u2);
    const double chi_h = op.r[i] < 3.0 ? 1.0 : 0.0;
    d.E_surrogate +=
        Hi * (std::norm(st.v[i] - I * op.shift * chi_h * st.u[i]) + std::max(op.Vc[i], 0.0) * u2);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double g = std::norm(st.u[i + 1] - st.u[i]) / h;
    d.E += g;
    d.E_surrogate += g;
  }
  const auto [g0, gN] = op.boundary_data(st.u, st.v);
  d.flux_left = 2.0 * std::real(std::conj(st.v[0]) * g0);
  d.flux_right = -2.0 * std::real(std::conj(st.v[n - 1]) * gN);
  return d;
}

// Spatial integrals of the two Morawetz densities.
std::pair<double, double> morawetz_density(const Operator& op, const Weights& w,
                                           const WaveState& st, const ModeSpec& mode) {
  const std::size_t n = st.u.size();
  const double h = op.h;
  const double L2 = mode.Lambda0 * mode.Lambda0;
  double deg = 0.0, plain = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = op.r[i];
    cplx ur;
    if (i == 0)
      ur = (st.u[1] - st.u[0]) / h;
    else if (i + 1 == n)
      ur = (st.u[n - 1] - st.u[n - 2]) / h;
    else
      ur = (st.u[i + 1] - st.u[i - 1]) / (2.0 * h);
    const double u2 = std::norm(st.u[i]);
    const double base = std::norm(ur) / (r * r) + u2 / (r * r * r * r);
    const double angular = std::norm(st.v[i]) + L2 * u2 / (r * r);
    // measure dr = μ dr*
    deg += w.H[i] * w.mu[i] * (base + w.deg[i] * angular);
    plain += w.H[i] * w.mu[i] * (base + w.plain[i] * angular);
  }
  return {deg, plain};
}

}  // namespace

EvolveResult evolve(const BlackHoleParams& p, const ModeSpec& mode, WaveState st,
                    const EvolveOptions& opt) {
  validate_mode(mode);
  const WaveGrid& g = opt.grid;
  if (!(g.cfl > 0.0) || g.cfl > 0.9) {
    std::ostringstream os;
    os << "CFL number " << g.cfl << " exceeds 0.9";
    throw KerrError(ErrorCode::CFLViolation, os.str());
  }
  const std::size_t n = st.u.size();
  if (n < 3 || st.v.size() != n || st.r.size() != n)
    throw KerrError(ErrorCode::InvalidArgument, "wave state arrays have inconsistent sizes");

  Operator op;
  op.h = g.h;
  op.bc = opt.boundary;
  op.shift = mode.m_az * p.omega_H;
  op.r = st.r;
  op.Vc.resize(n);
  op.W.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    op.Vc[i] = mode.V_c(p, st.r[i]);
    op.W[i] = mode.W(p, st.r[i]);
  }
  Weights w;
  w.H.assign(n, g.h);
  w.H.front() = w.H.back() = 0.5 * g.h;
  const double rt = opt.r_trap.value_or(3.0 * p.m);
  w.deg.resize(n);
  w.plain.resize(n);
  w.mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = st.r[i];
    // (r - r_trap)²/r³ near trapping, joined continuously to r⁻² where |r - r_trap| = √r
    w.deg[i] = std::min((r - rt) * (r - rt) / r, 1.0) / (r * r);
    w.plain[i] = 1.0 / (r * r);
    w.mu[i] = p.mu(r);
  }

  const double dt = g.cfl * g.h;
  const long steps = static_cast<long>(std::ceil(opt.T_final / dt - 1e-9));
  EvolveResult res;
  std::vector<std::size_t> probe_idx;
  for (double x : opt.probes) {
    const long i = std::lround((x - g.rs_left) / g.h);
    probe_idx.push_back(static_cast<std::size_t>(std::clamp<long>(i, 0, long(n) - 1)));
  }
  res.probe_signals.resize(probe_idx.size());
  auto sample = [&] {
    res.probe_times.push_back(st.t);
    for (std::size_t j = 0; j < probe_idx.size(); ++j)
      res.probe_signals[j].push_back(st.u[probe_idx[j]]);
  };

  WaveDiagnostics diag = diagnose(op, w, st);
  auto [mdeg, mplain] = morawetz_density(op, w, st, mode);
  res.series.push_back(diag);
  sample();

  std::vector<cplx> k1u(n), k1v(n), k2u(n), k2v(n), k3u(n), k3v(n), k4u(n), k4v(n), tu(n), tv(n);
  double M = 0.0, Mp = 0.0;
  for (long s = 1; s <= steps; ++s) {
    const double step = std::min(dt, opt.T_final - st.t);
    op.apply(st.u, st.v, k1u, k1v);
    for (std::size_t i = 0; i < n; ++i) {
      tu[i] = st.u[i] + 0.5 * step * k1u[i];
      tv[i] = st.v[i] + 0.5 * step * k1v[i];
    }
    op.apply(tu, tv, k2u, k2v);
    for (std::size_t i = 0; i < n; ++i) {
      tu[i] = st.u[i] + 0.5 * step * k2u[i];
      tv[i] = st.v[i] + 0.5 * step * k2v[i];
    }
    op.apply(tu, tv, k3u, k3v);
    for (std::size_t i = 0; i < n; ++i) {
      tu[i] = st.u[i] + step * k3u[i];
      tv[i] = st.v[i] + step * k3v[i];
    }
    op.apply(tu, tv, k4u, k4v);
    for (std::size_t i = 0; i < n; ++i) {
      st.u[i] += step / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
      st.v[i] += step / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    st.t += step;
    if (!std::isfinite(std::abs(st.u[n / 2])) || !std::isfinite(std::abs(st.v[0]))) {
      throw KerrError(ErrorCode::NaNDetected, "non-finite field at step " + std::to_string(s));
    }
    const auto [d2, p2] = morawetz_density(op, w, st, mode);
    M += 0.5 * step * (mdeg + d2);
    Mp += 0.5 * step * (mplain + p2);
    mdeg = d2;
    mplain = p2;
    sample();
    if (s % std::max(opt.record_every, 1) == 0 || s == steps) {
      diag = diagnose(op, w, st);
      if (!std::isfinite(diag.E))
        throw KerrError(ErrorCode::NaNDetected, "non-finite energy at step " + std::to_string(s));
      diag.M = M;
      diag.M_plain = Mp;
      res.series.push_back(diag);
    }
  }
  res.steps = steps;
  res.final_state = std::move(st);
  return res;
}

namespace {

using OdeState = std::array<double, 5>;  // x = r - r₊, Re v, Im v, Re v', Im v'

}  // namespace

ScatterResult scattering_oracle(const BlackHoleParams& p, const ModeSpec& mode, double omega,
                                const ScatterOptions& opt) {
  validate_mode(mode);
  if (omega == 0.0) throw KerrError(ErrorCode::InvalidArgument, "ω = 0 has no scattering data");
  namespace ode = boost::numeric::odeint;
  const FrequencyTriplet xi = mode.triplet(omega);
  const double k = omega + mode.m_az * p.omega_H;
  const double split = p.r_plus - p.r_minus;

  ScatterResult out;
  out.omega = omega;
  out.k = k;
  out.superradiant = omega * k < 0.0;
  out.admissible = mode.Lambda0 * mode.Lambda0 >= 2.0 * std::fabs(p.a * mode.m_az * omega);

  auto rhs = [&](const OdeState& s, OdeState& ds, double) {
    const double x = s[0];
    const double r = p.r_plus + x;
    const double mu = x * (x + split) / p.L(r);
    const double q2 = omega * omega - potential_V(p, r, xi);
    ds[0] = mu;
    ds[1] = s[3];
    ds[2] = s[4];
    ds[3] = -q2 * s[1];
    ds[4] = -q2 * s[2];
  };

  double tol = opt.tolerance;
  for (int attempt = 0; attempt < 3; ++attempt, tol *= 0.1) {
    // horizon-going data e^{-ik r*}
    double rs_right = opt.rs_right;
    const cplx I(0.0, 1.0);
    const cplx v0 = std::exp(-I * k * opt.rs_left);
    const cplx dv0 = -I * k * v0;
    OdeState s{inverse_tortoise_gap(p, opt.rs_left), v0.real(), v0.imag(), dv0.real(), dv0.imag()};
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<OdeState>());
    const double h0 = 0.01 / std::max(1.0, std::fabs(omega));
    ode::integrate_adaptive(stepper, rhs, s, opt.rs_left, rs_right, h0);
    // continue outward until the local wavenumber is real
    double r = p.r_plus + s[0];
    while (omega * omega - potential_V(p, r, xi) <= 0.0) {
      ode::integrate_adaptive(stepper, rhs, s, rs_right, rs_right + 20.0, h0);
      rs_right += 20.0;
      r = p.r_plus + s[0];
      if (rs_right > opt.rs_right + 2000.0)
        throw KerrError(ErrorCode::StiffFailure, "no propagating zone found for this ω");
    }
    // WKB basis q^{-1/2} e^{±i q r*} at the matching point; Im(v̄v') = |A₊|² - |A₋|² holds exactly
    const double q = std::sqrt(omega * omega - potential_V(p, r, xi));
    const double mu = s[0] * (s[0] + split) / p.L(r);
    const double dq = -mu * dV_dr(p, r, xi) / (2.0 * q);
    const double c = dq / (2.0 * q);
    const cplx v(s[1], s[2]);
    const cplx dv(s[3], s[4]);
    const cplx w = (dv + c * v) / (I * q);
    const double sq = std::sqrt(q);
    const cplx A_plus = 0.5 * (v + w) * sq * std::exp(-I * q * rs_right);
    const cplx A_minus = 0.5 * (v - w) * sq * std::exp(I * q * rs_right);
    // the incident wave behaves like e^{-iωr*}
    const cplx A_in = omega > 0.0 ? A_minus : A_plus;
    const cplx A_out = omega > 0.0 ? A_plus : A_minus;
    out.R = A_out / A_in;
    out.T = std::sqrt(std::fabs(omega)) / A_in;
    out.R2 = std::norm(out.R);
    out.T2 = std::fabs(omega) / std::norm(A_in);
    out.flux_residual = std::fabs(omega * (1.0 - out.R2) - k * out.T2) /
                        (std::fabs(omega) * (1.0 + out.R2));
    if (out.flux_residual <= 1e-4) return out;
  }
  std::ostringstream os;
  os << "flux residual " << out.flux_residual << " at ω=" << omega;
  throw KerrError(ErrorCode::StiffFailure, os.str());
}

std::vector<ScatterResult> scattering_scan(const BlackHoleParams& p, const ModeSpec& mode,
                                           const std::vector<double>& omegas,
                                           const ScatterOptions& opt, unsigned workers) {
  std::vector<ScatterResult> out(omegas.size());
  parallel_tiles(omegas.size(), omegas.size(), workers,
                 [&](std::size_t b, std::size_t e, std::size_t) {
                   for (std::size_t i = b; i < e; ++i)
                     out[i] = scattering_oracle(p, mode, omegas[i], opt);
                 });
  return out;
}

std::vector<MorawetzRow> morawetz_experiment(const BlackHoleParams& p, const ModeSpec& mode,
                                             const std::vector<GaussianPacket>& packets,
                                             const RegimeSettings& settings,
                                             const EvolveOptions& opt, unsigned workers) {
  std::vector<MorawetzRow> rows(packets.size());
  parallel_tiles(packets.size(), packets.size(), workers,
                 [&](std::size_t b, std::size_t e, std::size_t) {
                   for (std::size_t i = b; i < e; ++i) {
                     const GaussianPacket& pk = packets[i];
                     MorawetzRow row;
                     row.packet = pk;
                     const FrequencyTriplet xi = mode.triplet(pk.omega0);
                     row.r_trap = xi.Lambda > 0.0 ? r_trap(p, xi, settings) : 3.0 * p.m;
                     EvolveOptions o = opt;
                     o.r_trap = row.r_trap;
                     const EvolveResult res = evolve(p, mode, packet_state(p, o.grid, pk), o);
                     const double E0 = res.series.front().E;
                     const double S0 = res.series.front().E_surrogate;
                     for (const auto& d : res.series) {
                       row.sup_energy_ratio = std::max(row.sup_energy_ratio, d.E / E0);
                       row.sup_surrogate_ratio =
                           std::max(row.sup_surrogate_ratio, d.E_surrogate / S0);
                     }
                     row.M_ratio = res.series.back().M / E0;
                     row.M_plain_ratio = res.series.back().M_plain / E0;
                     row.trapping_factor = res.series.back().M_plain / res.series.back().M;
                     rows[i] = row;
                   }
                 });
  return rows;
}

std::vector<TransmissionRow> transmission_comparison(const BlackHoleParams& p,
                                                     const ModeSpec& mode,
                                                     const GaussianPacket& packet,
                                                     const WaveGrid& grid, double probe_rs,
                                                     double T_final,
                                                     const std::vector<double>& omegas) {
  GaussianPacket pk = packet;
  pk.direction = -1;
  EvolveOptions opt;
  opt.grid = grid;
  opt.T_final = T_final;
  opt.record_every = 1 << 30;
  opt.probes = {probe_rs};
  const EvolveResult res = evolve(p, mode, packet_state(p, grid, pk), opt);
  const auto& ts = res.probe_times;
  const auto& sig = res.probe_signals[0];
  // incident wave at the probe if the potential were absent: u = G(r* + t)
  const cplx I(0.0, 1.0);
  const double probe = grid.rs_left + grid.h * std::lround((probe_rs - grid.rs_left) / grid.h);
  std::vector<TransmissionRow> rows;
  for (double w : omegas) {
    cplx trans = 0.0, inc = 0.0;
    for (std::size_t n = 0; n + 1 < ts.size(); ++n) {
      const double dt = ts[n + 1] - ts[n];
      const double t = ts[n];
      const double x = probe + t - pk.center;
      const cplx g = pk.amplitude * std::exp(-x * x / (2.0 * pk.width * pk.width)) *
                     std::exp(-I * pk.omega0 * (probe + t));
      const cplx ph = std::exp(I * w * t) * dt;
      trans += sig[n] * ph;
      inc += g * ph;
    }
    TransmissionRow row;
    row.omega = w;
    row.T_time = std::abs(trans) / std::abs(inc);
    row.T_frequency = std::sqrt(scattering_oracle(p, mode, w).T2);
    row.relative_error = std::fabs(row.T_time - row.T_frequency) / row.T_frequency;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kerrlab

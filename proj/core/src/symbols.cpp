#include "kerrlab/symbols.hpp"

#include "kerrlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kerrlab {

double carter_lambda(const BlackHoleParams& p, double theta, double xi_theta, double xi_tau,
                     double xi_phi) {
  const double s2 = std::sin(theta) * std::sin(theta);
  return std::sqrt(xi_theta * xi_theta + xi_phi * xi_phi / s2 + p.a * p.a * s2 * xi_tau * xi_tau);
}

PhasePoint extended_point(const BlackHoleParams& p, double r, double xi_r, double xi_tau,
                          double xi_phi, double theta, double xi_theta) {
  PhasePoint pt;
  pt.r = r;
  pt.xi_r = xi_r;
  pt.xi = {xi_tau, xi_phi, carter_lambda(p, theta, xi_theta, xi_tau, xi_phi)};
  pt.theta = theta;
  pt.xi_theta = xi_theta;
  return pt;
}

double s1_symbol(const BlackHoleParams& p, const ModFunctions& mods, double r,
                 const FrequencyTriplet& xi) {
  const double tp = mods.t_prime(r).v;
  const double pp = mods.phi_prime(r).v;
  const double L = p.L(r);
  const double D = p.Delta(r);
  return (L - D * tp) * xi.xi_tau + (p.a - D * pp) * xi.xi_phi;
}

double s2_symbol(const BlackHoleParams& p, const ModFunctions& mods, double r,
                 const FrequencyTriplet& xi) {
  const double tp = mods.t_prime(r).v;
  const double pp = mods.phi_prime(r).v;
  const double L = p.L(r);
  const double D = p.Delta(r);
  const double a = p.a;
  return -xi.Lambda * xi.Lambda -
         (2.0 * a * (1.0 - tp) - 2.0 * pp * (L - D * tp)) * xi.xi_tau * xi.xi_phi +
         (2.0 * L * tp - D * tp * tp) * xi.xi_tau * xi.xi_tau -
         (D * pp * pp - 2.0 * a * pp) * xi.xi_phi * xi.xi_phi;
}

double s2_bl(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  const double L = p.L(r);
  return L * L / p.Delta(r) * radial_gap(p, r, xi);
}

double xi_rstar(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt) {
  return p.mu(pt.r) * pt.xi_r + s1_symbol(p, mods, pt.r, pt.xi) / p.L(pt.r);
}

double wave_symbol(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt) {
  const double D = p.Delta(pt.r);
  return -D * pt.xi_r * pt.xi_r - 2.0 * s1_symbol(p, mods, pt.r, pt.xi) * pt.xi_r +
         s2_symbol(p, mods, pt.r, pt.xi);
}

double wave_symbol_rstar(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt) {
  const double xt = xi_rstar(p, mods, pt);
  return -p.L(pt.r) / p.mu(pt.r) * xt * xt + s2_bl(p, pt.r, pt.xi);
}

double metric_contraction(const BlackHoleParams& p, const ModFunctions& mods,
                          const PhasePoint& pt) {
  if (!pt.theta || !pt.xi_theta)
    throw KerrError(ErrorCode::InvalidArgument, "metric_contraction needs an extended point");
  const double tp = mods.t_prime(pt.r).v;
  const double pp = mods.phi_prime(pt.r).v;
  const Mat4 gi = normalized_inverse(p, pt.r, *pt.theta, tp, pp);
  const double xi[4] = {pt.xi.xi_tau, pt.xi_r, *pt.xi_theta, pt.xi.xi_phi};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += gi[i][j] * xi[i] * xi[j];
  return -p.q2(pt.r, *pt.theta) * acc;
}

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 1e-5 * std::max(std::fabs(x), 1.0);
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

namespace {

double d_r(const SymbolWithDerivatives& A, const PhasePoint& pt) {
  if (A.d_r) return A.d_r(pt.r, pt.xi_r, pt.xi);
  return central_difference([&](double r) { return A.value(r, pt.xi_r, pt.xi); }, pt.r);
}

double d_xr(const SymbolWithDerivatives& A, const PhasePoint& pt) {
  if (A.d_xi_r) return A.d_xi_r(pt.r, pt.xi_r, pt.xi);
  return central_difference([&](double x) { return A.value(pt.r, x, pt.xi); }, pt.xi_r);
}

}  // namespace

double poisson_bracket_reduced(const SymbolWithDerivatives& A, const SymbolWithDerivatives& B,
                               const PhasePoint& pt) {
  return d_xr(A, pt) * d_r(B, pt) - d_r(A, pt) * d_xr(B, pt);
}

double poisson_bracket_reduced(const SymbolFn& A, const SymbolFn& B, const PhasePoint& pt) {
  return poisson_bracket_reduced(SymbolWithDerivatives{A, {}, {}},
                                 SymbolWithDerivatives{B, {}, {}}, pt);
}

TripleValues MultiplierTriple::at(double r, const FrequencyTriplet& xi) const {
  TripleValues t;
  t.s0 = s0 ? s0(r, xi) : 0.0;
  t.s1 = s1 ? s1(r, xi) : 0.0;
  t.e0 = e0 ? e0(r, xi) : 0.0;
  if (ds0)
    t.ds0 = ds0(r, xi);
  else if (s0)
    t.ds0 = central_difference([&](double x) { return s0(x, xi); }, r);
  if (ds1)
    t.ds1 = ds1(r, xi);
  else if (s1)
    t.ds1 = central_difference([&](double x) { return s1(x, xi); }, r);
  return t;
}

double sigma2_bulk(const BlackHoleParams& p, const ModFunctions& mods, const TripleValues& t,
                   const PhasePoint& pt) {
  const double r = pt.r;
  const double L = p.L(r);
  const double mu = p.mu(r);
  const double xt = xi_rstar(p, mods, pt);
  const double gap = radial_gap(p, r, pt.xi);
  const double wave = xt * xt - gap;
  double out = 0.5 * (2.0 * L * t.ds0 * xt * xt + 2.0 * L * t.ds1 * xt);
  if (t.s0 != 0.0) {
    out += 0.5 * mu * t.s0 *
           ((-4.0 * r / mu + 2.0 * (r - p.m) / (mu * mu)) * wave - L / mu * dV_dr(p, r, pt.xi));
  }
  out += L / mu * t.e0 * wave;
  return out;
}

double sigma2_bdr(const BlackHoleParams& p, const ModFunctions& mods, const TripleValues& t,
                  const PhasePoint& pt) {
  const double r = pt.r;
  const double mu = p.mu(r);
  const double S1 = s1_symbol(p, mods, r, pt.xi);
  const double S2 = s2_symbol(p, mods, r, pt.xi);
  return -mu * t.s0 * pt.xi_r * S1 - t.s0 * S1 * S1 / p.L(r) - p.Delta(r) * t.s1 * pt.xi_r -
         t.s1 * S1 - 0.5 * mu * t.s0 * S2;
}

double sigma2_bulk(const BlackHoleParams& p, const ModFunctions& mods, const MultiplierTriple& mt,
                   const PhasePoint& pt) {
  return sigma2_bulk(p, mods, mt.at(pt.r, pt.xi), pt);
}

double sigma2_bdr(const BlackHoleParams& p, const ModFunctions& mods, const MultiplierTriple& mt,
                  const PhasePoint& pt) {
  return sigma2_bdr(p, mods, mt.at(pt.r, pt.xi), pt);
}

double mu_prime(const BlackHoleParams& p, double r) {
  const double L = p.L(r);
  return (2.0 * (r - p.m) * L - 2.0 * r * p.Delta(r)) / (L * L);
}

TripleValues triple_h(const BlackHoleParams& p, double r, double h) {
  TripleValues t;
  t.e0 = p.mu(r) * h;
  return t;
}

TripleValues triple_y(const BlackHoleParams& p, double r, double y, double dy) {
  TripleValues t;
  const double mu = p.mu(r);
  t.s0 = 2.0 * y;
  t.ds0 = 2.0 * dy;
  t.e0 = 2.0 * mu * r / p.L(r) * y - (mu_prime(p, r) * y + mu * dy);
  return t;
}

TripleValues triple_f(const BlackHoleParams& p, double r, double f, double df) {
  TripleValues t;
  t.s0 = 2.0 * f;
  t.ds0 = 2.0 * df;
  t.e0 = 2.0 * p.mu(r) * r / p.L(r) * f - mu_prime(p, r) * f;
  return t;
}

TripleValues triple_z(const BlackHoleParams& p, const FrequencyTriplet& xi, double chi_z,
                      double dchi_z, double scale) {
  TripleValues t;
  t.s1 = scale * (xi.xi_tau + chi_z * p.omega_H * xi.xi_phi);
  t.ds1 = scale * dchi_z * p.omega_H * xi.xi_phi;
  return t;
}

TripleValues operator+(const TripleValues& a, const TripleValues& b) {
  return {a.s0 + b.s0, a.ds0 + b.ds0, a.s1 + b.s1, a.ds1 + b.ds1, a.e0 + b.e0};
}

double current_h(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt,
                 double h) {
  return p.L(r) * h * (xt * xt - radial_gap(p, r, xi));
}

double current_y(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt,
                 double y, double dy) {
  return p.L(r) * (dy * xt * xt + dy * radial_gap(p, r, xi) - y * dV_dr(p, r, xi));
}

double current_f(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt,
                 double f, double df) {
  return p.L(r) * (2.0 * df * xt * xt - f * dV_dr(p, r, xi));
}

double current_z(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt,
                 double dchi_z, double scale) {
  return scale * p.L(r) * p.omega_H * dchi_z * xi.xi_phi * xt;
}

double flux_y(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt, double y) {
  const double mu = p.mu(pt.r);
  const double S1 = s1_symbol(p, mods, pt.r, pt.xi);
  return -2.0 * mu * y * pt.xi_r * S1 - 2.0 * y * S1 * S1 / p.L(pt.r) -
         mu * y * s2_symbol(p, mods, pt.r, pt.xi);
}

double flux_f(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt, double f) {
  return flux_y(p, mods, pt, f);
}

double flux_z(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt,
              double chi_z, double scale) {
  const double z = scale * (pt.xi.xi_tau + chi_z * p.omega_H * pt.xi.xi_phi);
  return -z * (p.Delta(pt.r) * pt.xi_r + s1_symbol(p, mods, pt.r, pt.xi));
}

}  // namespace kerrlab

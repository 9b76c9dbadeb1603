#include "kerrlab/phase_space.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kerrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cubic {
  double c3, c2, c1, c0;
  double operator()(double r) const { return ((c3 * r + c2) * r + c1) * r + c0; }
  double prime(double r) const { return (3.0 * c3 * r + 2.0 * c2) * r + c1; }
};

Cubic scaled_cubic(const BlackHoleParams& p, const FrequencyTriplet& xi) {
  const double a = p.a;
  const double m = p.m;
  const double L2 = xi.Lambda * xi.Lambda;
  const double pt = xi.xi_phi * xi.xi_tau;
  return {-2.0 * L2, 6.0 * m * L2 + 12.0 * a * m * pt,
          -2.0 * a * a * L2 + 4.0 * a * a * xi.xi_phi * xi.xi_phi,
          -2.0 * a * a * m * L2 - 4.0 * a * a * a * m * pt};
}

// Root of f on [lo, hi] with f(lo) > 0 ≥ f(hi), bisected to relative 1e-12.
template <class F>
double bisect_down(F&& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double FrequencyTriplet::norm() const {
  return std::sqrt(xi_tau * xi_tau + xi_phi * xi_phi + Lambda * Lambda);
}

bool admissible(const BlackHoleParams& p, const FrequencyTriplet& xi, double rel_tol) {
  if (xi.Lambda < 0.0) return false;
  const double L2 = xi.Lambda * xi.Lambda;
  const double need = std::max(xi.xi_phi * xi.xi_phi, 2.0 * std::fabs(p.a * xi.xi_phi * xi.xi_tau));
  return L2 >= need * (1.0 - rel_tol);
}

double potential_V(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  const double a = p.a;
  const double L = p.L(r);
  return (p.Delta(r) * xi.Lambda * xi.Lambda - 4.0 * a * p.m * r * xi.xi_tau * xi.xi_phi -
          a * a * xi.xi_phi * xi.xi_phi) /
         (L * L);
}

double scaled_first(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  return scaled_cubic(p, xi)(r);
}

double scaled_second(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  return scaled_cubic(p, xi).prime(r);
}

double dV_dr(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  const double L = p.L(r);
  return scaled_first(p, r, xi) / (L * L * L);
}

double radial_gap(const BlackHoleParams& p, double r, const FrequencyTriplet& xi) {
  return xi.xi_tau * xi.xi_tau - potential_V(p, r, xi);
}

double k_plus(const BlackHoleParams& p, const FrequencyTriplet& xi) {
  return xi.xi_tau + p.omega_H * xi.xi_phi;
}

bool is_superradiant(const BlackHoleParams& p, const FrequencyTriplet& xi) {
  return xi.xi_tau * (xi.xi_tau + p.omega_H * xi.xi_phi) < 0.0;
}

CriticalPointReport critical_points(const BlackHoleParams& p, const FrequencyTriplet& xi) {
  if (!(xi.Lambda > 0.0))
    throw KerrError(ErrorCode::InvalidArgument, "critical_points requires Λ > 0");
  const Cubic P = scaled_cubic(p, xi);
  const double rp = p.r_plus;
  const double L2 = xi.Lambda * xi.Lambda;
  // P' = 3c3 r² + 2c2 r + c1 with c3 = -2Λ² < 0: positive between its roots.
  const double disc = P.c2 * P.c2 - 3.0 * P.c3 * P.c1;
  CriticalPointReport rep;
  double r1 = -kInf;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    r1 = (P.c2 + sq) / (6.0 * L2);
    const double r_small = (P.c2 - sq) / (6.0 * L2);
    if (r_small > rp * (1.0 + 1e-12) && P.prime(0.5 * (rp + r_small)) < 0.0) {
      std::ostringstream os;
      os << "scaled_second changes sign twice above r₊ (roots " << r_small << ", " << r1 << ")";
      throw KerrError(ErrorCode::ClassificationAmbiguous, os.str());
    }
  }
  auto upper_bracket = [&](double from) {
    double hi = std::max(from, rp) * 2.0 + 16.0 * p.m;
    while (P(hi) > 0.0) hi *= 2.0;
    return hi;
  };
  const double P_rp = P(rp);
  if (r1 <= rp) {
    if (P_rp > 0.0) {
      rep.kind = CriticalCase::UniqueMax;
      rep.r_max = bisect_down(P, rp, upper_bracket(rp));
    } else {
      rep.kind = CriticalCase::StrictlyDecreasing;
    }
  } else {
    const double P_r1 = P(r1);
    if (P_r1 <= 0.0) {
      rep.kind = CriticalCase::StrictlyDecreasing;
    } else {
      rep.r_max = bisect_down(P, r1, upper_bracket(r1));
      if (P_rp < 0.0) {
        rep.kind = CriticalCase::MinThenMax;
        // P increasing on (r₊, r₁): root where it crosses upward
        rep.r_min = bisect_down([&](double r) { return -P(r); }, rp, r1);
      } else {
        rep.kind = CriticalCase::UniqueMax;
      }
    }
  }
  if (rep.r_max) {
    if (*rep.r_max > 8.0 * p.m * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "r_max=" << *rep.r_max << " exceeds 8m";
      throw KerrError(ErrorCode::ClassificationAmbiguous, os.str());
    }
    rep.V_at_max = potential_V(p, *rep.r_max, xi);
  }
  return rep;
}

const char* regime_name(int regime) {
  static const char* names[kRegimeCount] = {"SR", "A", "T", "TR1", "TR2"};
  return (regime >= 0 && regime < kRegimeCount) ? names[regime] : "?";
}

RegimeSettings make_regime_settings(const BlackHoleParams& p, double delta_F, double theta,
                                    double R) {
  const SmallConstants c = default_constants(p);
  RegimeSettings s;
  s.delta_F = delta_F;
  s.theta = theta;
  s.r_inner = p.r_plus * (1.0 + c.delta_H_prime);
  s.R = R * p.m;
  return s;
}

FrequencyMargins frequency_margins(const BlackHoleParams& p, const FrequencyTriplet& xi,
                                   const RegimeSettings& s) {
  FrequencyMargins fm;
  const double L2 = xi.Lambda * xi.Lambda;
  fm.p = -xi.xi_tau * xi.xi_phi / L2;
  fm.w = xi.xi_phi * xi.xi_phi / L2;
  fm.u = xi.xi_tau * xi.xi_tau / L2;
  fm.crit = critical_points(p, xi);
  fm.g_V = (fm.crit.kind == CriticalCase::UniqueMax)
               ? (*fm.crit.V_at_max - xi.xi_tau * xi.xi_tau) / L2
               : -kInf;
  double mx = std::min(radial_gap(p, s.r_inner, xi), radial_gap(p, s.R, xi));
  if (fm.crit.r_max && *fm.crit.r_max > s.r_inner && *fm.crit.r_max < s.R)
    mx = std::min(mx, radial_gap(p, *fm.crit.r_max, xi));
  fm.mu_X = mx / L2;
  return fm;
}

namespace {

using smooth::ramp;

double safe_ratio(double num, double den) { return std::isfinite(num) ? num / den : -kInf; }

double exclusion_weight(const BlackHoleParams& p, const FrequencyMargins& fm,
                        const RegimeSettings& s) {
  const double d = s.delta_F;
  const double th = s.theta;
  return ramp((fm.p - d / 8.0) / (d / 8.0)) * ramp((p.omega_H * fm.w + 1.5 * d - fm.p) / (d / 2.0)) *
         ramp(safe_ratio(fm.g_V - 1.5 * th, 0.5 * th));
}

}  // namespace

std::array<double, kRegimeCount> regime_weights(const BlackHoleParams& p,
                                                const FrequencyTriplet& xi,
                                                const RegimeSettings& s,
                                                const FrequencyMargins* margins) {
  std::array<double, kRegimeCount> w{};
  if (!(xi.Lambda > 0.0)) {
    w[kT] = 1.0;
    return w;
  }
  FrequencyMargins local;
  if (!margins) {
    local = frequency_margins(p, xi, s);
    margins = &local;
  }
  const FrequencyMargins& fm = *margins;
  const double d = s.delta_F;
  const double th = s.theta;
  w[kSR] = ramp(fm.p / (d / 4.0)) * ramp((p.omega_H * fm.w + 2.0 * d - fm.p) / d) *
           ramp(safe_ratio(fm.g_V - th, th));
  const double nu = 1.0 - exclusion_weight(p, fm, s);
  const double lu = std::log(fm.u);  // -inf when ξ_τ = 0
  const double ln2 = std::log(2.0);
  const double wa = ramp((std::log(d) - lu) / ln2);
  const double wt = ramp((lu - std::log(1.0 / d)) / ln2);
  const double wtr = ramp((lu - std::log(d / 2.0)) / ln2) * ramp((std::log(2.0 / d) - lu) / ln2);
  const double q = d * d / 4.0;
  w[kA] = wa * nu;
  w[kT] = wt * nu;
  w[kTR1] = wtr * nu * ramp((fm.mu_X - q) / q);
  w[kTR2] = wtr * nu * ramp((2.0 * q - fm.mu_X) / q);
  return w;
}

std::array<double, kRegimeCount> direction_partition(const BlackHoleParams& p,
                                                     const FrequencyTriplet& xi,
                                                     const RegimeSettings& s,
                                                     const FrequencyMargins* margins) {
  auto w = regime_weights(p, xi, s, margins);
  double sum2 = 0.0;
  for (double v : w) sum2 += v * v;
  if (!(sum2 > 0.0)) {
    std::ostringstream os;
    os << "no regime weight at Ξ=(" << xi.xi_tau << ", " << xi.xi_phi << ", " << xi.Lambda << ")";
    throw KerrError(ErrorCode::CoverGap, os.str());
  }
  const double inv = 1.0 / std::sqrt(sum2);
  for (double& v : w) v *= inv;
  return w;
}

std::array<double, kRegimeCount> partition_of_unity(const BlackHoleParams& p,
                                                    const FrequencyTriplet& xi,
                                                    const RegimeSettings& s) {
  std::array<double, kRegimeCount> out{};
  const double cut = smooth::step(xi.norm() - 1.0);
  if (cut == 0.0) return out;
  out = direction_partition(p, xi, s);
  for (double& v : out) v *= cut;
  return out;
}

double trap_indicator(const BlackHoleParams& p, const FrequencyTriplet& xi,
                      const RegimeSettings& s, const FrequencyMargins* margins) {
  if (!(xi.Lambda > 0.0)) return 0.0;
  FrequencyMargins local;
  if (!margins) {
    local = frequency_margins(p, xi, s);
    margins = &local;
  }
  const FrequencyMargins& fm = *margins;
  auto low = [](double t) { return smooth::step((t - 0.02) / 0.08); };
  const double d = s.delta_F;
  const double q = d * d / 4.0;
  const double lu = std::log(fm.u);
  const double ln2 = std::log(2.0);
  return low((lu - std::log(d / 2.0)) / ln2) * low((std::log(2.0 / d) - lu) / ln2) *
         low((2.0 * q - fm.mu_X) / q);
}

double r_trap(const BlackHoleParams& p, const FrequencyTriplet& xi, const RegimeSettings& s,
              const FrequencyMargins* margins) {
  if (!(xi.Lambda > 0.0)) return 3.0 * p.m;
  FrequencyMargins local;
  if (!margins) {
    local = frequency_margins(p, xi, s);
    margins = &local;
  }
  const double chi = trap_indicator(p, xi, s, margins);
  if (chi == 0.0 || !margins->crit.r_max) return 3.0 * p.m;
  return 3.0 * p.m * (1.0 - chi) + chi * *margins->crit.r_max;
}

double gap_threshold_radius(const BlackHoleParams& p, const FrequencyTriplet& xi, double lo,
                            double hi, double level) {
  const double thr = level * xi.Lambda * xi.Lambda;
  auto f = [&](double r) { return radial_gap(p, r, xi) - thr; };
  if (f(lo) <= 0.0) return lo;
  if (f(hi) > 0.0) return hi;
  return bisect_down(f, lo, hi);
}

RegimeMembership classify_regimes(const BlackHoleParams& p, const FrequencyTriplet& xi,
                                  const RegimeSettings& s) {
  if (!admissible(p, xi)) {
    std::ostringstream os;
    os << "Λ² < max{ξ_φ², 2|aξ_φξ_τ|} at Ξ=(" << xi.xi_tau << ", " << xi.xi_phi << ", "
       << xi.Lambda << ")";
    throw KerrError(ErrorCode::InadmissibleFrequency, os.str());
  }
  RegimeMembership rm;
  rm.delta_F = s.delta_F;
  if (!(xi.Lambda > 0.0)) {
    rm.in_T = true;
    rm.chi = partition_of_unity(p, xi, s);
    return rm;
  }
  rm.margins = frequency_margins(p, xi, s);
  const auto& fm = rm.margins;
  const double d = s.delta_F;
  const double th = s.theta;
  rm.in_exclusion_band = fm.p >= d / 4.0 && fm.p <= p.omega_H * fm.w + d;
  // closed set where the exclusion weight equals one
  const bool excluded = fm.p >= 0.2375 * d && fm.p <= p.omega_H * fm.w + 1.05 * d &&
                        fm.g_V >= 1.95 * th;
  rm.in_SR = fm.p > 0.0 && fm.p < p.omega_H * fm.w + 2.0 * d && fm.g_V > th;
  rm.in_A = fm.u < d && !excluded;
  rm.in_T = fm.u > 1.0 / d && !excluded;
  rm.in_TR = fm.u > d / 2.0 && fm.u < 2.0 / d && !excluded;
  const double q = d * d / 4.0;
  rm.in_TR1 = rm.in_TR && fm.mu_X > q;
  rm.in_TR2 = rm.in_TR && fm.mu_X < 2.0 * q;
  if (rm.in_TR) {
    double s1 = s.r_inner;
    if (fm.crit.r_min) s1 = std::max(s1, *fm.crit.r_min);
    const double s2 = fm.crit.r_max ? std::min(*fm.crit.r_max, s.R) : s.R;
    if (s2 > s1) {
      rm.r3 = gap_threshold_radius(p, xi, s1, s2, 0.25 * d * d);
      rm.r4 = gap_threshold_radius(p, xi, s1, s2, 0.5 * d * d);
    }
  }
  rm.chi = partition_of_unity(p, xi, s);
  return rm;
}

FrequencyTriplet AdmissibleSampler::next() {
  for (;;) {
    double v[3] = {normal_(rng_), normal_(rng_), normal_(rng_)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0.0)) continue;
    FrequencyTriplet xi{v[0] / n, v[1] / n, std::fabs(v[2]) / n};
    if (xi.Lambda > 0.0 && admissible(p_, xi, 0.0)) return xi;
  }
}

NonTrappingFit search_delta_F(const BlackHoleParams& p, double r_inner, double R, int samples,
                              std::uint64_t seed) {
  AdmissibleSampler sampler(p, seed);
  struct Sample {
    FrequencyTriplet xi;
    CriticalPointReport crit;
  };
  std::vector<Sample> S;
  S.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    Sample smp;
    smp.xi = sampler.next();
    smp.crit = critical_points(p, smp.xi);
    S.push_back(smp);
  }
  NonTrappingFit fit;
  fit.b_superradiant = kInf;
  for (const auto& smp : S) {
    if (!is_superradiant(p, smp.xi)) continue;
    double g = -kInf;
    if (smp.crit.kind == CriticalCase::UniqueMax)
      g = (*smp.crit.V_at_max - smp.xi.xi_tau * smp.xi.xi_tau) / (smp.xi.Lambda * smp.xi.Lambda);
    fit.b_superradiant = std::min(fit.b_superradiant, g);
  }
  for (int k = 0; k <= 12; ++k) {
    const double d = std::ldexp(1.0, -k) * (p.m - p.a) / (p.m * p.m);
    const double th = std::isfinite(fit.b_superradiant) ? fit.b_superradiant / 4.0 : d / 4.0;
    if (!(th > 0.0)) break;
    RegimeSettings rs;
    rs.delta_F = d;
    rs.theta = th;
    rs.r_inner = r_inner;
    rs.R = R;
    bool ok = true;
    for (const auto& smp : S) {
      const auto& xi = smp.xi;
      const double L2 = xi.Lambda * xi.Lambda;
      if (-xi.xi_tau * xi.xi_phi <= p.omega_H * xi.xi_phi * xi.xi_phi + d * L2) {
        if (smp.crit.kind != CriticalCase::UniqueMax || !(dV_dr(p, r_inner, xi) > 0.0)) {
          ok = false;
          break;
        }
      }
      FrequencyMargins fm = frequency_margins(p, xi, rs);
      const auto w = regime_weights(p, xi, rs, &fm);
      if (w[kA] > 0.0 && !(fm.g_V > th)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    fit.delta_F = d;
    fit.k = k;
    fit.theta = th;
    fit.success = true;
    // fitted constants of the non-superradiant side
    fit.b_point1 = kInf;
    fit.min_rmax_gap = kInf;
    for (const auto& smp : S) {
      const auto& xi = smp.xi;
      const double L2 = xi.Lambda * xi.Lambda;
      if (!(-xi.xi_tau * xi.xi_phi <= p.omega_H * xi.xi_phi * xi.xi_phi + d * L2)) continue;
      const double rm = *smp.crit.r_max;
      fit.min_rmax_gap = std::min(fit.min_rmax_gap, rm - p.r_plus);
      for (int i = 0; i < 200; ++i) {
        const double r = r_inner + (R - r_inner) * (i + 0.5) / 200.0;
        const double dr = r - rm;
        if (std::fabs(dr) < 1e-9) continue;
        const double val = -dr * dV_dr(p, r, xi) * r * r * r * r / (L2 * dr * dr);
        fit.b_point1 = std::min(fit.b_point1, val);
      }
    }
    break;
  }
  return fit;
}

}  // namespace kerrlab

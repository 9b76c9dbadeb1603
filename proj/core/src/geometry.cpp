#include "kerrlab/geometry.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace kerrlab {

namespace {

Jet jet_div(const Jet& u, const Jet& w) {
  Jet q;
  q.v = u.v / w.v;
  q.d1 = (u.d1 - q.v * w.d1) / w.v;
  q.d2 = (u.d2 - 2.0 * q.d1 * w.d1 - q.v * w.d2) / w.v;
  return q;
}

Jet jet_lin(double alpha, const Jet& u, double beta, const Jet& w) {
  return {alpha * u.v + beta * w.v, alpha * u.d1 + beta * w.d1, alpha * u.d2 + beta * w.d2};
}

Jet inner_t(const BlackHoleParams& p, double r) {
  const double m2 = p.m * p.m;
  return {m2 / (r * r), -2.0 * m2 / (r * r * r), 6.0 * m2 / (r * r * r * r)};
}

Jet jet_L(const BlackHoleParams& p, double r) { return {r * r + p.a * p.a, 2.0 * r, 2.0}; }
Jet jet_Delta(const BlackHoleParams& p, double r) {
  return {p.Delta(r), 2.0 * r - 2.0 * p.m, 2.0};
}

Jet bl_t(const BlackHoleParams& p, double r) { return jet_div(jet_L(p, r), jet_Delta(p, r)); }
Jet bl_phi(const BlackHoleParams& p, double r) {
  return jet_div({p.a, 0.0, 0.0}, jet_Delta(p, r));
}
Jet outer_t(const BlackHoleParams& p, double r) {
  return jet_lin(2.0, bl_t(p, r), -1.0, inner_t(p, r));
}
Jet outer_phi(const BlackHoleParams& p, double r) { return jet_lin(2.0, bl_phi(p, r), 0.0, {}); }

// g1 + S(x)(g2 - g1) with x affine in r on [lo, hi].
Jet blend(const Jet& g1, const Jet& g2, double r, double lo, double hi) {
  const double h = hi - lo;
  const auto s = smooth::quintic((r - lo) / h);
  const Jet d = jet_lin(1.0, g2, -1.0, g1);
  const double s1 = s.d1 / h;
  const double s2 = s.d2 / (h * h);
  return {g1.v + s.v * d.v, g1.d1 + s1 * d.v + s.v * d.d1,
          g1.d2 + s2 * d.v + 2.0 * s1 * d.d1 + s.v * d.d2};
}

double corruption_bump(double r, double lo, double hi) {
  const double x = (r - lo) / (hi - lo);
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = x * (1.0 - x);
  return 64.0 * y * y * y;
}

void require_chart(const CoordPoint& pt, Chart c) {
  if (pt.chart != c) throw KerrError(ErrorCode::ChartMismatch, "coordinate chart does not match");
}

Mat4 zero4() { return Mat4{}; }

}  // namespace

ModFunctions::ModFunctions(const BlackHoleParams& p, double delta_H, double delta_BL)
    : p_(p), delta_H_(delta_H), delta_BL_(delta_BL) {
  r1_ = p.r_plus * (1.0 + delta_BL);
  r2_ = p.r_plus * (1.0 + 2.0 * delta_BL);
}

Jet ModFunctions::t_prime(double r) const {
  const double m = p_.m;
  Jet out;
  if (r <= r1_) {
    out = inner_t(p_, r);
  } else if (r < r2_) {
    out = blend(inner_t(p_, r), bl_t(p_, r), r, r1_, r2_);
    if (corrupt_ != 0.0) out.v += corrupt_ * corruption_bump(r, r1_, r2_) * bl_t(p_, r).v;
  } else if (r <= 12.0 * m) {
    out = bl_t(p_, r);
  } else if (r < 13.0 * m) {
    out = blend(bl_t(p_, r), outer_t(p_, r), r, 12.0 * m, 13.0 * m);
    if (corrupt_ != 0.0) out.v += corrupt_ * corruption_bump(r, 12.0 * m, 13.0 * m) * bl_t(p_, r).v;
  } else {
    out = outer_t(p_, r);
  }
  return out;
}

Jet ModFunctions::phi_prime(double r) const {
  const double m = p_.m;
  if (p_.a == 0.0 || r <= r1_) return {};
  if (r < r2_) return blend({}, bl_phi(p_, r), r, r1_, r2_);
  if (r <= 12.0 * m) return bl_phi(p_, r);
  if (r < 13.0 * m) return blend(bl_phi(p_, r), outer_phi(p_, r), r, 12.0 * m, 13.0 * m);
  return outer_phi(p_, r);
}

BlendReport verify_blends(const ModFunctions& mods, BlendGrid grid) {
  const auto& p = mods.params();
  BlendReport rep;
  rep.lower_gap = std::numeric_limits<double>::infinity();
  rep.upper_gap = std::numeric_limits<double>::infinity();
  const double ranges[2][2] = {{mods.inner_lo(), mods.inner_hi()},
                               {mods.outer_lo(), mods.outer_hi()}};
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& rg : ranges) {
    for (int i = 0; i <= grid.n_r; ++i) {
      const double r = rg[0] + (rg[1] - rg[0]) * i / grid.n_r;
      const double tp = mods.t_prime(r).v;
      const double L = p.L(r);
      const double D = p.Delta(r);
      for (int j = 0; j < grid.n_theta; ++j) {
        const double th =
            kThetaMin + (std::numbers::pi - 2.0 * kThetaMin) * (j + 0.5) / grid.n_theta;
        const double s2 = std::sin(th) * std::sin(th);
        const double disc = std::sqrt(L * L - p.a * p.a * s2 * D);
        const double lower = p.a * p.a * s2 / (L + disc);
        const double upper = (L + disc) / D;
        const double lg = (tp - lower) / tp;
        const double ug = (upper - tp) / tp;
        rep.lower_gap = std::min(rep.lower_gap, lg);
        rep.upper_gap = std::min(rep.upper_gap, ug);
        if (std::min(lg, ug) < worst) {
          worst = std::min(lg, ug);
          rep.worst_r = r;
          rep.worst_theta = th;
        }
      }
    }
  }
  rep.pass = rep.lower_gap > 0.0 && rep.upper_gap > 0.0;
  return rep;
}

ModFunctions build_mod_functions(const BlackHoleParams& p, double delta_H, double delta_BL,
                                 BlendReport* report, BlendGrid grid, double corruption) {
  constexpr double slack = 1.0 + 1e-12;
  const double spin_gap = 1.0 - p.a / p.m;
  if (!(delta_H > 0.0) || !(delta_BL > 0.0) || delta_H > delta_BL / 5.0 * slack ||
      delta_BL > spin_gap / 5.0 * slack) {
    std::ostringstream os;
    os << "constants violate 0 < δ_H ≤ δ_BL/5, δ_BL ≤ (1-a/m)/5 (δ_H=" << delta_H
       << ", δ_BL=" << delta_BL << ", a/m=" << p.a / p.m << ")";
    throw KerrError(ErrorCode::BlendInfeasible, os.str());
  }
  ModFunctions mods(p, delta_H, delta_BL);
  mods.set_corruption(corruption);
  const BlendReport rep = verify_blends(mods, grid);
  if (report) *report = rep;
  if (!rep.pass) {
    std::ostringstream os;
    os << "spacelike interval violated at r=" << rep.worst_r << ", θ=" << rep.worst_theta
       << " (gaps " << rep.lower_gap << ", " << rep.upper_gap << ")";
    throw KerrError(ErrorCode::BlendInfeasible, os.str());
  }
  return mods;
}

MetricComponents metric_bl(const BlackHoleParams& p, const CoordPoint& pt) {
  require_chart(pt, Chart::BoyerLindquist);
  const double r = pt.r();
  const double th = pt.theta();
  const double D = p.Delta(r);
  if (!(D > 0.0)) throw KerrError(ErrorCode::HorizonSingular, "Δ(r) ≤ 0 in Boyer–Lindquist chart");
  const double q2 = p.q2(r, th);
  const double s = std::sin(th);
  const double s2 = s * s;
  const double S2 = p.Sigma2(r, th);
  const double m = p.m;
  const double a = p.a;
  MetricComponents mc;
  mc.g = zero4();
  mc.g[0][0] = -(1.0 - 2.0 * m * r / q2);
  mc.g[0][3] = mc.g[3][0] = -2.0 * a * m * r * s2 / q2;
  mc.g[1][1] = q2 / D;
  mc.g[2][2] = q2;
  mc.g[3][3] = S2 * s2 / q2;
  mc.ginv = zero4();
  mc.ginv[0][0] = -S2 / (q2 * D);
  mc.ginv[1][1] = D / q2;
  mc.ginv[2][2] = 1.0 / q2;
  mc.ginv[3][3] = (D - a * a * s2) / (q2 * D * s2);
  mc.ginv[0][3] = mc.ginv[3][0] = -2.0 * a * m * r / (q2 * D);
  mc.sqrt_det = q2 * s;
  return mc;
}

namespace {

using WideMat4 = std::array<std::array<long double, 4>, 4>;

WideMat4 ef_metric_wide(const BlackHoleParams& p, double r, double th) {
  using ld = long double;
  const ld R = r, a = p.a, m = p.m;
  const ld s = std::sin(static_cast<ld>(th)), c = std::cos(static_cast<ld>(th));
  const ld s2 = s * s;
  const ld q2 = R * R + a * a * c * c;
  const ld L = R * R + a * a;
  const ld D = R * R - 2.0L * m * R + a * a;
  WideMat4 g{};
  g[0][0] = -(1.0L - 2.0L * m * R / q2);
  g[0][1] = g[1][0] = 1.0L;
  g[0][3] = g[3][0] = -2.0L * a * m * R * s2 / q2;
  g[1][3] = g[3][1] = -a * s2;
  g[2][2] = q2;
  g[3][3] = (L * L - a * a * s2 * D) * s2 / q2;
  return g;
}

Mat4 ef_metric(const BlackHoleParams& p, double r, double th) {
  const WideMat4 w = ef_metric_wide(p, r, th);
  Mat4 g = zero4();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = static_cast<double>(w[i][j]);
  return g;
}

}  // namespace

Mat4 normalized_inverse(const BlackHoleParams& p, double r, double th, double tp, double pp) {
  // evaluated wide for the same reason as the pull-back below: 1 - μt' cancels near the blend
  using ld = long double;
  const ld R = r, a = p.a, m = p.m, T = tp, P = pp;
  const ld s = std::sin(static_cast<ld>(th)), c = std::cos(static_cast<ld>(th));
  const ld s2 = s * s;
  const ld q2 = R * R + a * a * c * c;
  const ld D = R * R - 2.0L * m * R + a * a;
  const ld L = R * R + a * a;
  const ld u = (L - D * T) / L;  // 1 - μt'
  Mat4 gi = zero4();
  gi[0][0] = static_cast<double>((a * a * s2 - 2.0L * L * T + D * T * T) / q2);
  gi[1][1] = static_cast<double>(D / q2);
  gi[0][1] = gi[1][0] = static_cast<double>(L * u / q2);
  gi[1][3] = gi[3][1] = static_cast<double>((a - D * P) / q2);
  gi[0][3] = gi[3][0] = static_cast<double>((a * (1.0L - T) - P * L * u) / q2);
  gi[2][2] = static_cast<double>(1.0L / q2);
  gi[3][3] = static_cast<double>((1.0L / s2 - 2.0L * a * P + D * P * P) / q2);
  return gi;
}

Mat4 normalized_metric(const BlackHoleParams& p, double r, double th, double tp, double pp) {
  const WideMat4 g = ef_metric_wide(p, r, th);
  WideMat4 J{};
  for (int i = 0; i < 4; ++i) J[i][i] = 1.0L;
  J[0][1] = tp;
  J[3][1] = pp;
  // t' reaches 1/Δ near the inner blend; the pull-back cancels O(t') terms, so accumulate wide
  Mat4 out = zero4();
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      long double acc = 0.0L;
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          acc += J[mu][al] * g[mu][nu] * J[nu][be];
      out[al][be] = static_cast<double>(acc);
    }
  return out;
}

MetricComponents metric_ef(const BlackHoleParams& p, const CoordPoint& pt, double delta_H) {
  require_chart(pt, Chart::IngoingEF);
  const double r = pt.r();
  if (!(r > p.r_plus * (1.0 - delta_H)))
    throw KerrError(ErrorCode::InvalidArgument, "r below r₊(1-δ_H) in ingoing EF chart");
  MetricComponents mc;
  mc.g = ef_metric(p, r, pt.theta());
  mc.ginv = normalized_inverse(p, r, pt.theta(), 0.0, 0.0);
  mc.sqrt_det = p.q2(r, pt.theta()) * std::sin(pt.theta());
  return mc;
}

MetricComponents inverse_metric_normalized(const BlackHoleParams& p, const ModFunctions& mods,
                                           const CoordPoint& pt) {
  require_chart(pt, Chart::Normalized);
  const double r = pt.r();
  if (!(r >= p.r_plus * (1.0 - mods.delta_H()) * (1.0 - 1e-15)))
    throw KerrError(ErrorCode::InvalidArgument, "r below r₊(1-δ_H) in normalized chart");
  const double tp = mods.t_prime(r).v;
  const double pp = mods.phi_prime(r).v;
  MetricComponents mc;
  mc.g = normalized_metric(p, r, pt.theta(), tp, pp);
  mc.ginv = normalized_inverse(p, r, pt.theta(), tp, pp);
  mc.sqrt_det = p.q2(r, pt.theta()) * std::sin(pt.theta());
  return mc;
}

std::vector<double> clustered_grid(double lo, double hi, double eps, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double span = std::log1p((hi - lo) / eps);
  for (int i = 0; i < n; ++i) out[i] = lo + eps * std::expm1(span * i / (n - 1));
  out[n - 1] = hi;
  return out;
}

SpacelikeReport certify_spacelike(const ModFunctions& mods, int n_r, int n_theta, double r_max) {
  const auto& p = mods.params();
  const double lo = p.r_plus * (1.0 - mods.delta_H());
  const auto rs = clustered_grid(lo, r_max * p.m, p.r_plus * mods.delta_H(), n_r);
  SpacelikeReport rep;
  rep.max_relative_gtt = -std::numeric_limits<double>::infinity();
  for (double r : rs) {
    const double tp = mods.t_prime(r).v;
    const double L = p.L(r);
    const double D = p.Delta(r);
    for (int j = 0; j < n_theta; ++j) {
      const double th = kThetaMin + (std::numbers::pi - 2.0 * kThetaMin) * j / (n_theta - 1);
      const double s2 = std::sin(th) * std::sin(th);
      const double val = p.a * p.a * s2 - 2.0 * L * tp + D * tp * tp;
      const double scale = p.a * p.a * s2 + 2.0 * L * std::fabs(tp) + std::fabs(D) * tp * tp;
      const double rel = val / scale;
      if (rel > rep.max_relative_gtt) {
        rep.max_relative_gtt = rel;
        rep.worst_r = r;
        rep.worst_theta = th;
      }
    }
  }
  rep.pass = rep.max_relative_gtt < 0.0;
  return rep;
}

Mat4 matmul(const Mat4& A, const Mat4& B) {
  Mat4 C = zero4();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += A[i][k] * B[k][j];
      C[i][j] = acc;
    }
  return C;
}

double determinant(const Mat4& A) {
  // Gaussian elimination with partial pivoting
  Mat4 M = A;
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
    if (M[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = M[r][c] / M[c][c];
      for (int k = c; k < 4; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return det;
}

double max_identity_defect(const Mat4& g, const Mat4& ginv) {
  const Mat4 P = matmul(g, ginv);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::fabs(P[i][j] - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace kerrlab

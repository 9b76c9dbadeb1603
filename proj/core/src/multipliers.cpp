#include "kerrlab/multipliers.hpp"

#include "kerrlab/errors.hpp"
#include "kerrlab/parallel.hpp"
#include "kerrlab/smooth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace kerrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const FrequencyTriplet& xi) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << xi.xi_tau << ", " << xi.xi_phi << ", " << xi.Lambda << ")";
  return os.str();
}

}  // namespace

ExpProfile::ExpProfile(double r_in, double r_max, double R, double lo, double hi) : r_max_(r_max) {
  const double x0 = 1.0 / r_max - 1.0 / r_in;
  const double xR = 1.0 / r_max - 1.0 / R;
  const double target = hi / -lo;
  auto ratio = [&](double k) {
    if (std::fabs(k) < 1e-12) return xR / -x0;
    return std::expm1(k * xR) / -std::expm1(k * x0);
  };
  // ratio is increasing in κ
  double a = -500.0, b = 500.0;
  for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
    const double mid = 0.5 * (a + b);
    (ratio(mid) < target ? a : b) = mid;
  }
  kappa_ = 0.5 * (a + b);
  if (std::fabs(kappa_) < 1e-12) {
    kappa_ = 0.0;
    c_ = lo / x0;
  } else {
    c_ = lo / std::expm1(kappa_ * x0);
  }
}

double ExpProfile::value(double r) const {
  const double x = 1.0 / r_max_ - 1.0 / r;
  return kappa_ == 0.0 ? c_ * x : c_ * std::expm1(kappa_ * x);
}

double ExpProfile::derivative(double r) const {
  const double x = 1.0 / r_max_ - 1.0 / r;
  const double k = kappa_ == 0.0 ? 1.0 : kappa_ * std::exp(kappa_ * x);
  return c_ * k / (r * r);
}

MultiplierSet::MultiplierSet(const BlackHoleParams& p, const RegimeSettings& s,
                             const MultiplierConstants& c, Regime regime,
                             const FrequencyTriplet& xi, const FrequencyMargins& fm)
    : p_(p), s_(s), c_(c), regime_(regime), xi_(xi), r_max_(fm.crit.r_max) {
  const double r_in = s.r_inner;
  const double R = s.R;
  const double top = 1.0 - p.m / R;
  const bool max_inside = r_max_ && *r_max_ > r_in && *r_max_ < R;
  auto fail = [&](const char* why) {
    throw KerrError(ErrorCode::PositivityFailure,
                    std::string(regime_name(regime)) + ": " + why + " at Ξ=" + describe(xi));
  };
  switch (regime) {
    case kSR:
    case kA:
      if (!max_inside) fail("no interior r_max");
      if (*r_max_ - c.delta0 / 2.0 <= r_in) fail("δ₀ too wide for r_max");
      f_profile_ = ExpProfile(r_in, *r_max_, R, -1.0, top);
      break;
    case kT:
    case kTR1: {
      if (!r_max_ || *r_max_ <= r_in) {
        s1_ = s2_ = r_in;
      } else {
        s1_ = fm.crit.r_min ? std::max(r_in, *fm.crit.r_min) : r_in;
        s2_ = std::min(*r_max_, R);
      }
      X_s1_ = radial_gap(p, s1_, xi);
      if (!(X_s1_ > 0.0) || !(radial_gap(p, s2_, xi) > 0.0)) fail("ξ_τ² - V not positive");
      y_norm_ = top / std::expm1(adaptive_exponent(R));
      break;
    }
    case kTR2: {
      if (!max_inside) fail("no interior r_max");
      const double s1 = fm.crit.r_min ? std::max(r_in, *fm.crit.r_min) : r_in;
      const double r4 =
          gap_threshold_radius(p, xi, s1, std::min(*r_max_, R), 0.5 * s.delta_F * s.delta_F);
      r_c_ = 0.5 * (s1 + r4);
      y_scale_ = r_c_ - r_in;
      if (!(y_scale_ > 0.0)) fail("empty y support");
      K_ = c.C2 / (s.delta_F * s.delta_F);
      ell_ = std::min(0.5 * y_scale_, y_scale_ * y_scale_ / K_);
      f_profile_ = ExpProfile(r_in, *r_max_, R, -c.phi0, top);
      break;
    }
  }
}

double MultiplierSet::adaptive_exponent(double r) const {
  const double rc = std::clamp(r, s1_, s2_);
  double I = c_.lambda * p_.m * (1.0 / s_.r_inner - 1.0 / r);
  if (s2_ > s1_) I += (1.0 + c_.eps) * std::log(X_s1_ / radial_gap(p_, rc, xi_));
  return I;
}

ProfileValues MultiplierSet::eval(double r) const {
  ProfileValues v;
  const double m = p_.m;
  const double h1 = -c_.c_prime * c_.h1_scale * m / (r * r);
  switch (regime_) {
    case kSR:
    case kA: {
      v.f = f_profile_.value(r);
      v.df = f_profile_.derivative(r);
      const double d0 = c_.delta0;
      const double bump = smooth::step((d0 - std::fabs(r - *r_max_)) / (d0 / 2.0));
      v.h = c_.B * bump * (1.0 - c_.c_prime / 4.0) + h1;
      const double u = (*r_max_ - d0 / 4.0 - r) / (d0 / 4.0);
      v.chi_z = smooth::step(u);
      v.dchi_z = -smooth::step_prime(u) / (d0 / 4.0);
      break;
    }
    case kT:
    case kTR1: {
      const double I = adaptive_exponent(r);
      double rate = c_.lambda * m / (r * r);
      if (r > s1_ && r < s2_) rate += (1.0 + c_.eps) * dV_dr(p_, r, xi_) / radial_gap(p_, r, xi_);
      v.y = y_norm_ * std::expm1(I);
      v.dy = y_norm_ * rate * std::exp(I);
      v.h = regime_ == kT ? h1 : smooth::step(r / m - 10.0) * h1;
      break;
    }
    case kTR2: {
      if (r < r_c_) {
        const double gap = r_c_ - r;
        const double e = std::exp(-K_ * (1.0 / gap - 1.0 / y_scale_));
        v.y = -c_.c_y * e;
        v.dy = c_.c_y * e * K_ / (gap * gap);
      }
      const double x = (r - s_.r_inner) / ell_;
      const double w = smooth::step(x);
      const double dw = smooth::step_prime(x) / ell_;
      const double phi = f_profile_.value(r);
      v.f = phi * w;
      v.df = f_profile_.derivative(r) * w + phi * dw;
      v.h = smooth::step(r / m - 10.0) * h1;
      break;
    }
  }
  return v;
}

SquareCompletion MultiplierSet::completion(double r) const {
  const ProfileValues v = eval(r);
  const double L = p_.L(r);
  const double X = radial_gap(p_, r, xi_);
  const double Vp = dV_dr(p_, r, xi_);
  SquareCompletion sc;
  sc.d = L * (v.h + v.dy + 2.0 * v.df);
  sc.E = 0.5 * L * c_.A * p_.omega_H * v.dchi_z * xi_.xi_phi;
  sc.F = L * ((v.dy - v.h) * X - (v.y + v.f) * Vp);
  return sc;
}

TripleValues MultiplierSet::triple(double r) const {
  const ProfileValues v = eval(r);
  return triple_h(p_, r, v.h) + triple_y(p_, r, v.y, v.dy) + triple_f(p_, r, v.f, v.df) +
         triple_z(p_, xi_, v.chi_z, v.dchi_z, c_.A);
}

MultiplierSet build_multipliers(const BlackHoleParams& p, const RegimeSettings& s,
                                const MultiplierConstants& c, Regime regime,
                                const FrequencyTriplet& xi) {
  return MultiplierSet(p, s, c, regime, xi, frequency_margins(p, xi, s));
}

SquareCompletion AssembledMultipliers::completion(double r) const {
  SquareCompletion out;
  for (const auto& set : sets) {
    const double w = chi[set.regime()] * chi[set.regime()];
    const SquareCompletion sc = set.completion(r);
    out.d += w * sc.d;
    out.E += w * sc.E;
    out.F += w * sc.F;
  }
  return out;
}

double AssembledMultipliers::p0(double r) const {
  const double t2 = xi.xi_tau * xi.xi_tau;
  const double ang = xi.xi_phi * xi.xi_phi + xi.Lambda * xi.Lambda;
  const double chi5 = chi[kTR2] * chi[kTR2];
  const double plain = t2 + ang / (r * r);
  const double dr = r - r_trap;
  const double trapped = dr * dr * (t2 / (r * r) + ang / (r * r * r * r));
  return (1.0 - chi5) * plain + chi5 * trapped;
}

int AssembledMultipliers::dominant_regime() const {
  return static_cast<int>(std::max_element(chi.begin(), chi.end()) - chi.begin());
}

AssembledMultipliers assemble_multipliers(const BlackHoleParams& p, const RegimeSettings& s,
                                          const MultiplierConstants& c,
                                          const FrequencyTriplet& xi) {
  AssembledMultipliers am;
  am.xi = xi;
  FrequencyMargins fm;
  if (xi.Lambda > 0.0) fm = frequency_margins(p, xi, s);
  am.chi = direction_partition(p, xi, s, &fm);
  am.r_trap = xi.Lambda > 0.0 ? r_trap(p, xi, s, &fm) : 3.0 * p.m;
  for (int j = 0; j < kRegimeCount; ++j)
    if (am.chi[j] > 0.0) am.sets.emplace_back(p, s, c, static_cast<Regime>(j), xi, fm);
  return am;
}

double total_bulk_current(const BlackHoleParams& p, const ModFunctions& mods,
                          const AssembledMultipliers& am, const PhasePoint& pt) {
  const double xt = xi_rstar(p, mods, pt);
  double out = 0.0;
  for (const auto& set : am.sets) {
    const double w = am.chi[set.regime()] * am.chi[set.regime()];
    const ProfileValues v = set.eval(pt.r);
    out += w * (current_h(p, pt.r, pt.xi, xt, v.h) + current_y(p, pt.r, pt.xi, xt, v.y, v.dy) +
                current_f(p, pt.r, pt.xi, xt, v.f, v.df) +
                current_z(p, pt.r, pt.xi, xt, v.dchi_z, set.z_scale()));
  }
  return out;
}

double total_bulk_generic(const BlackHoleParams& p, const ModFunctions& mods,
                          const AssembledMultipliers& am, const PhasePoint& pt) {
  TripleValues sum;
  for (const auto& set : am.sets) {
    const double w = am.chi[set.regime()] * am.chi[set.regime()];
    const TripleValues t = set.triple(pt.r);
    sum = sum + TripleValues{w * t.s0, w * t.ds0, w * t.s1, w * t.ds1, w * t.e0};
  }
  // triple_z was built on the set's own Ξ; rescale to pt.xi by homogeneity of s₁.
  const double scale = am.xi.norm() > 0.0 ? pt.xi.norm() / am.xi.norm() : 1.0;
  sum.s1 *= scale;
  sum.ds1 *= scale;
  return sigma2_bulk(p, mods, sum, pt);
}

std::vector<FrequencyTriplet> direction_lattice(const BlackHoleParams& p, int n_alpha, int n_beta,
                                                std::vector<int>* coarse_flags) {
  std::vector<FrequencyTriplet> out;
  if (coarse_flags) coarse_flags->clear();
  for (int i = 0; i < n_alpha; ++i) {
    const double alpha = std::numbers::pi * (i + 0.5) / n_alpha;
    for (int j = 0; j < n_beta; ++j) {
      const double beta =
          n_beta > 1 ? -std::numbers::pi / 4.0 + (std::numbers::pi / 2.0) * j / (n_beta - 1) : 0.0;
      const FrequencyTriplet xi{std::cos(alpha), std::sin(alpha) * std::sin(beta),
                                std::sin(alpha) * std::cos(beta)};
      if (!admissible(p, xi)) continue;
      out.push_back(xi);
      if (coarse_flags) coarse_flags->push_back(i % 2 == 0 && j % 2 == 0);
    }
  }
  return out;
}

std::vector<double> certification_radii(const BlackHoleParams& p, const RegimeSettings& s,
                                        int n_r) {
  return clustered_grid(s.r_inner, s.R, s.r_inner - p.r_plus, n_r);
}

namespace {

struct TileResult {
  ArgMin fine, coarse;
  double d_min = kInf;
  std::array<ArgMin, kRegimeCount> by_regime{};
  long long points = 0;
  std::string error;
  std::size_t error_index = static_cast<std::size_t>(-1);
};

}  // namespace

CertReport certify_bulk(const BlackHoleParams& p, const RegimeSettings& s,
                        const MultiplierConstants& c, const CertGrid& grid, double tolerance) {
  CertReport rep;
  rep.grid = grid;
  std::vector<int> coarse;
  auto dirs = direction_lattice(p, grid.n_alpha, grid.n_beta, &coarse);
  rep.skipped = grid.n_alpha * grid.n_beta - static_cast<int>(dirs.size());
  for (const auto& xi : grid.extra) {
    dirs.push_back(xi);
    coarse.push_back(1);
  }
  rep.directions = static_cast<int>(dirs.size());
  const auto radii = certification_radii(p, s, grid.n_r);
  const std::size_t nr = radii.size();

  const std::size_t tiles = std::min<std::size_t>(dirs.size(), 512);
  std::vector<TileResult> results(tiles);
  std::vector<double> dir_min(dirs.size(), kInf);
  std::atomic<bool> stop{false};
  parallel_tiles(dirs.size(), tiles, grid.workers, [&](std::size_t b, std::size_t e, std::size_t t) {
    TileResult& tr = results[t];
    for (std::size_t n = b; n < e; ++n) {
      if (grid.fail_fast && stop.load(std::memory_order_relaxed)) return;
      AssembledMultipliers am;
      try {
        am = assemble_multipliers(p, s, c, dirs[n]);
      } catch (const KerrError& err) {
        tr.fine.merge(-kInf, n * nr);
        dir_min[n] = -kInf;
        if (coarse[n]) tr.coarse.merge(-kInf, n * nr);
        if (tr.error.empty()) {
          tr.error = err.what();
          tr.error_index = n * nr;
        }
        stop = true;
        continue;
      }
      const int dom = am.dominant_regime();
      for (std::size_t k = 0; k < nr; ++k) {
        const double r = radii[k];
        const SquareCompletion sc = am.completion(r);
        const double dl = sc.d / p.L(r);
        double val;
        if (sc.d > 0.0)
          val = sc.remainder() / am.p0(r);
        else
          val = std::min(dl, 0.0) - 1.0;
        if (!std::isfinite(val)) val = -kInf;
        const std::size_t idx = n * nr + k;
        tr.fine.merge(val, idx);
        dir_min[n] = std::min(dir_min[n], val);
        if (coarse[n] && k % 2 == 0) tr.coarse.merge(val, idx);
        tr.d_min = std::min(tr.d_min, dl);
        tr.by_regime[dom].merge(val, idx);
        ++tr.points;
        if (grid.fail_fast && !(val > tolerance)) {
          stop = true;
          break;
        }
      }
    }
  });

  ArgMin fine, crs;
  rep.d_min = kInf;
  std::array<ArgMin, kRegimeCount> by_regime{};
  std::size_t err_index = static_cast<std::size_t>(-1);
  for (const auto& tr : results) {
    fine.merge(tr.fine);
    crs.merge(tr.coarse);
    rep.d_min = std::min(rep.d_min, tr.d_min);
    for (int j = 0; j < kRegimeCount; ++j) by_regime[j].merge(tr.by_regime[j]);
    rep.points += tr.points;
    if (!tr.error.empty() && tr.error_index < err_index) {
      err_index = tr.error_index;
      rep.message = tr.error;
    }
  }
  rep.c_min = fine.value;
  for (int j = 0; j < kRegimeCount; ++j) {
    rep.c_min_by_regime[j] = by_regime[j].value;
    if (by_regime[j].index == static_cast<std::size_t>(-1)) continue;
    rep.worst_r_by_regime[j] = radii[by_regime[j].index % nr];
    rep.worst_xi_by_regime[j] = dirs[by_regime[j].index / nr];
  }
  rep.c_min_coarse = crs.value;
  rep.monotone = rep.c_min <= rep.c_min_coarse;
  if (fine.index != static_cast<std::size_t>(-1)) {
    rep.worst_xi = dirs[fine.index / nr];
    rep.worst_r = radii[fine.index % nr];
    try {
      rep.worst_regime = assemble_multipliers(p, s, c, rep.worst_xi).dominant_regime();
    } catch (const KerrError&) {
      rep.worst_regime = -1;
    }
  }
  std::vector<std::size_t> bad;
  for (std::size_t n = 0; n < dirs.size(); ++n)
    if (!(dir_min[n] > tolerance)) bad.push_back(n);
  std::stable_sort(bad.begin(), bad.end(),
                   [&](std::size_t x, std::size_t y) { return dir_min[x] < dir_min[y]; });
  if (bad.size() > 32) bad.resize(32);
  for (std::size_t n : bad) rep.failing_directions.push_back(dirs[n]);
  rep.pass = rep.message.empty() && rep.c_min > tolerance && rep.d_min > 0.0 && rep.monotone;
  if (rep.message.empty() && !rep.pass) {
    std::ostringstream os;
    os.precision(6);
    os << "c_min=" << rep.c_min << " d_min=" << rep.d_min << " at r=" << rep.worst_r
       << " Ξ=" << describe(rep.worst_xi);
    rep.message = os.str();
  }
  return rep;
}

BoundaryTerms boundary_terms(const BlackHoleParams& p, const ModFunctions& mods,
                             const RegimeSettings& s, const MultiplierConstants& c,
                             const MultiplierSet& set, double xi_r) {
  const double r = s.r_inner;
  const FrequencyTriplet& xi = set.xi();
  PhasePoint pt;
  pt.r = r;
  pt.xi_r = xi_r;
  pt.xi = xi;
  BoundaryTerms bt;
  bt.sigma_bdr = sigma2_bdr(p, mods, set.triple(r), pt);
  const double L = p.L(r);
  const double D = p.Delta(r);
  const double kp = k_plus(p, xi);
  const double tau = xi.xi_tau;
  const double angular = xi.Lambda * xi.Lambda + 2.0 * p.a * tau * xi.xi_phi;
  const double A = c.A;
  const double d4 = std::pow(s.delta_F, 4);
  switch (set.regime()) {
    case kSR:
    case kA:
      bt.rho2 = 0.5 * (A - 2.0) * L * kp * kp;
      bt.varpi2 = bt.rho2 + D * angular / L;
      break;
    case kT:
      bt.rho2 = 0.5 * A * L * tau * tau;
      bt.varpi2 = 0.5 * A * L * (tau * tau + 2.0 * p.omega_H * tau * xi.xi_phi);
      break;
    case kTR1:
      bt.rho2 = 0.25 * d4 * A * L * tau * tau;
      bt.varpi2 = A * L * (tau * kp - 0.25 * d4 * tau * tau);
      break;
    case kTR2: {
      const double base = tau * tau + p.a * p.a * xi.xi_phi * xi.xi_phi;
      bt.rho2 = L * base;
      bt.varpi2 = L * (A * tau * kp - 2.0 * c.c_y * kp * kp - base) + c.c_y * D * angular / L;
      break;
    }
  }
  return bt;
}

namespace {

struct BoundaryFit {
  double C = 0.0;
  double min_rho = kInf, min_varpi = kInf;
  int samples = 0;
  FrequencyTriplet worst_xi;
  double worst_xi_r = 0.0;
  std::string error;
};

constexpr double kXiRSamples[] = {-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0};

BoundaryFit fit_boundary(const BlackHoleParams& p, const ModFunctions& mods,
                         const RegimeSettings& s, const MultiplierConstants& c, int regime,
                         const std::vector<FrequencyTriplet>& dirs) {
  BoundaryFit fit;
  const double mu = p.mu(s.r_inner);
  for (const auto& xi : dirs) {
    FrequencyMargins fm;
    if (xi.Lambda > 0.0) fm = frequency_margins(p, xi, s);
    const auto w = regime_weights(p, xi, s, &fm);
    if (!(w[regime] > 0.0)) continue;
    std::optional<MultiplierSet> set;
    try {
      set.emplace(p, s, c, static_cast<Regime>(regime), xi, fm);
    } catch (const KerrError& err) {
      if (fit.error.empty()) fit.error = err.what();
      continue;
    }
    for (double xr : kXiRSamples) {
      const BoundaryTerms bt = boundary_terms(p, mods, s, c, *set, xr);
      const double scale = xi.norm() * xi.norm() * p.L(s.r_inner);
      fit.min_rho = std::min(fit.min_rho, bt.rho2 / scale);
      fit.min_varpi = std::min(fit.min_varpi, bt.varpi2 / scale);
      const double N = std::sqrt(xr * xr + xi.norm() * xi.norm());
      const double denom =
          std::fabs(mu) * std::sqrt(std::max(bt.rho2, 0.0)) * N + mu * mu * N * N;
      const double C = std::fabs(bt.residual()) / denom;
      if (C > fit.C) {
        fit.C = C;
        fit.worst_xi = xi;
        fit.worst_xi_r = xr;
      }
      ++fit.samples;
    }
  }
  return fit;
}

}  // namespace

BoundaryReport certify_boundary(const BlackHoleParams& p, const ModFunctions& mods,
                                const RegimeSettings& s, const MultiplierConstants& c,
                                int n_alpha, int n_beta) {
  BoundaryReport rep;
  rep.pass = true;
  const auto dirs = direction_lattice(p, n_alpha, n_beta);
  RegimeSettings half = s;
  const double dHp = s.r_inner / p.r_plus - 1.0;
  half.r_inner = p.r_plus * (1.0 + 0.5 * dHp);
  for (int j = 0; j < kRegimeCount; ++j) {
    BoundaryRegimeReport& rr = rep.regimes[j];
    rr.regime = j;
    const BoundaryFit full = fit_boundary(p, mods, s, c, j, dirs);
    const BoundaryFit fine = fit_boundary(p, mods, half, c, j, dirs);
    rr.samples = full.samples;
    rr.C_fit = full.C;
    rr.C_fit_half = fine.C;
    rr.min_rho_radicand = full.samples ? std::min(full.min_rho, fine.min_rho) : 0.0;
    rr.min_varpi_radicand = full.samples ? std::min(full.min_varpi, fine.min_varpi) : 0.0;
    rr.worst_xi = full.worst_xi;
    rr.worst_xi_r = full.worst_xi_r;
    const double tol = -1e-12;
    // C must stay bounded as the boundary approaches the horizon.
    rr.pass = full.error.empty() && fine.error.empty() && std::isfinite(full.C) &&
              std::isfinite(fine.C) && rr.min_rho_radicand >= tol &&
              rr.min_varpi_radicand >= tol && fine.C <= 2.0 * full.C + 1e-6;
    if (!rr.pass) {
      rep.pass = false;
      std::ostringstream os;
      os.precision(6);
      os << regime_name(j) << ": C=" << full.C << " C_half=" << fine.C
         << " min ϱ²=" << rr.min_rho_radicand << " min ϖ²=" << rr.min_varpi_radicand;
      if (!full.error.empty()) os << " " << full.error;
      if (!rep.message.empty()) rep.message += "; ";
      rep.message += os.str();
    }
  }
  return rep;
}

SearchResult search_constants(const BlackHoleParams& p, const ModFunctions& mods,
                              const RegimeSettings& s, const SearchOptions& opt,
                              const MultiplierConstants& base) {
  SearchResult res;
  std::vector<FrequencyTriplet> witnesses;
  const double gap = p.m - p.a;
  for (int ka = 0; ka <= 12; ++ka) {
    MultiplierConstants c = base;
    c.A = 4.0 * std::ldexp(1.0, ka);
    const BoundaryReport bnd = certify_boundary(p, mods, s, c, opt.boundary_alpha, opt.boundary_beta);
    if (!bnd.pass) {
      res.message = "boundary: " + bnd.message;
      continue;
    }
    for (int kd = 0; kd <= 10; ++kd) {
      c.delta0 = gap * std::ldexp(1.0, -kd);
      for (int kc = 1; kc <= 12; ++kc) {
        c.c_prime = std::ldexp(1.0, -kc);
        for (int kb = 1; kb <= 16; ++kb) {
          c.B = c.A * std::ldexp(1.0, kb);
          CertGrid probe = opt.probe;
          probe.extra.insert(probe.extra.end(), witnesses.begin(), witnesses.end());
          ++res.probes;
          const CertReport pr = certify_bulk(p, s, c, probe);
          if (!pr.pass) {
            res.message = "probe: " + pr.message;
            continue;
          }
          ++res.final_runs;
          CertReport full = certify_bulk(p, s, c, opt.final_grid);
          if (full.pass) {
            res.success = true;
            res.constants = c;
            res.bulk = std::move(full);
            res.boundary = bnd;
            res.message.clear();
            return res;
          }
          res.bulk = full;
          res.boundary = bnd;
          res.constants = c;
          res.message = "final grid: " + full.message;
          if (res.final_runs >= opt.max_final_runs) return res;
          witnesses.insert(witnesses.end(), full.failing_directions.begin(),
                           full.failing_directions.end());
        }
      }
    }
  }
  return res;
}

}  // namespace kerrlab

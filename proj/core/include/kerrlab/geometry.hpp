#pragma once

#include "kerrlab/params.hpp"

#include <array>
#include <string>
#include <vector>

namespace kerrlab {

enum class Chart { BoyerLindquist, IngoingEF, Normalized };

struct CoordPoint {
  Chart chart = Chart::BoyerLindquist;
  // (t|v₊|τ, r, θ, φ|φ₊|φ̃)
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  double r() const { return x[1]; }
  double theta() const { return x[2]; }
};

using Mat4 = std::array<std::array<double, 4>, 4>;

struct MetricComponents {
  Mat4 g{};
  Mat4 ginv{};
  double sqrt_det = 0.0;
};

// Value with first and second r-derivatives.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

class ModFunctions {
 public:
  ModFunctions() = default;
  ModFunctions(const BlackHoleParams& p, double delta_H, double delta_BL);

  Jet t_prime(double r) const;
  Jet phi_prime(double r) const;

  double delta_H() const { return delta_H_; }
  double delta_BL() const { return delta_BL_; }
  // Inner blend [r₊(1+δ_BL), r₊(1+2δ_BL)] and outer blend [12m, 13m].
  double inner_lo() const { return r1_; }
  double inner_hi() const { return r2_; }
  double outer_lo() const { return 12.0 * p_.m; }
  double outer_hi() const { return 13.0 * p_.m; }
  const BlackHoleParams& params() const { return p_; }

  // Test hook: adds a bump of this relative size to t_mod' inside both blends.
  void set_corruption(double amplitude) { corrupt_ = amplitude; }
  double corruption() const { return corrupt_; }

 private:
  BlackHoleParams p_{};
  double delta_H_ = 0.0;
  double delta_BL_ = 0.0;
  double r1_ = 0.0;
  double r2_ = 0.0;
  double corrupt_ = 0.0;
};

struct BlendReport {
  bool pass = false;
  double lower_gap = 0.0;  // min (t' - lower root)/t' over blends
  double upper_gap = 0.0;  // min (upper root - t')/t' over blends
  double worst_r = 0.0;
  double worst_theta = 0.0;
};

struct BlendGrid {
  int n_r = 400;
  int n_theta = 64;
};

// Builds and certifies the modifier functions; throws BlendInfeasible on failure.
ModFunctions build_mod_functions(const BlackHoleParams& p, double delta_H, double delta_BL,
                                 BlendReport* report = nullptr, BlendGrid grid = {},
                                 double corruption = 0.0);
BlendReport verify_blends(const ModFunctions& mods, BlendGrid grid = {});

inline constexpr double kThetaMin = 1e-6;

MetricComponents metric_bl(const BlackHoleParams& p, const CoordPoint& pt);
MetricComponents metric_ef(const BlackHoleParams& p, const CoordPoint& pt, double delta_H);
MetricComponents inverse_metric_normalized(const BlackHoleParams& p, const ModFunctions& mods,
                                           const CoordPoint& pt);

// Inverse metric of the normalized chart for given modifier derivatives; t'=φ'=0 is ingoing EF.
Mat4 normalized_inverse(const BlackHoleParams& p, double r, double theta, double t_prime,
                        double phi_prime);
// Covariant metric pulled back from ingoing EF through dv₊ = dτ + t'dr, dφ₊ = dφ̃ + φ'dr.
Mat4 normalized_metric(const BlackHoleParams& p, double r, double theta, double t_prime,
                       double phi_prime);

struct SpacelikeReport {
  bool pass = false;
  double max_relative_gtt = 0.0;  // max g^ττ |q|² / (a²sin²θ + 2(r²+a²)t' + |Δ|t'²)
  double worst_r = 0.0;
  double worst_theta = 0.0;
};

// g^ττ < 0 on r ∈ [r₊(1-δ_H), r_max] × θ grid.
SpacelikeReport certify_spacelike(const ModFunctions& mods, int n_r = 2000, int n_theta = 64,
                                  double r_max = 1e3);

// n points on [lo, hi], logarithmically clustered towards lo with offset scale eps.
std::vector<double> clustered_grid(double lo, double hi, double eps, int n);

Mat4 matmul(const Mat4& A, const Mat4& B);
double determinant(const Mat4& A);
double max_identity_defect(const Mat4& g, const Mat4& ginv);

}  // namespace kerrlab

#pragma once

#include <cmath>

namespace kerrlab {

// Geometric units with m carried explicitly. Spin is stored nonnegative.
struct BlackHoleParams {
  double m = 1.0;
  double a = 0.0;
  double r_plus = 2.0;
  double r_minus = 0.0;
  double omega_H = 0.0;

  double Delta(double r) const { return r * r - 2.0 * m * r + a * a; }
  double L(double r) const { return r * r + a * a; }
  double mu(double r) const { return Delta(r) / L(r); }
  double q2(double r, double theta) const {
    const double c = std::cos(theta);
    return r * r + a * a * c * c;
  }
  // (r²+a²)² - a² sin²θ Δ
  double Sigma2(double r, double theta) const {
    const double s = std::sin(theta);
    return L(r) * L(r) - a * a * s * s * Delta(r);
  }
};

BlackHoleParams new_params(double a, double m = 1.0);

// Small-constant ladder δ_BL ≫ δ_red ≫ δ_H and the shifted inner radius δ_H'.
struct SmallConstants {
  double delta_BL;
  double delta_red;
  double delta_H;
  double delta_H_prime;
};

SmallConstants default_constants(const BlackHoleParams& p);

}  // namespace kerrlab

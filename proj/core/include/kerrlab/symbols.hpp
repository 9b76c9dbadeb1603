#pragma once

#include "kerrlab/geometry.hpp"
#include "kerrlab/phase_space.hpp"

#include <functional>
#include <optional>

namespace kerrlab {

struct PhasePoint {
  double r = 0.0;
  double xi_r = 0.0;
  FrequencyTriplet xi;
  // Extended data (θ, ξ_θ); Λ must then equal the Carter contraction below.
  std::optional<double> theta;
  std::optional<double> xi_theta;
};

// Λ from (θ, ξ_θ, ξ_φ̃, ξ_τ): Λ² = ξ_θ² + ξ_φ̃²/sin²θ + a² sin²θ ξ_τ².
double carter_lambda(const BlackHoleParams& p, double theta, double xi_theta, double xi_tau,
                     double xi_phi);
PhasePoint extended_point(const BlackHoleParams& p, double r, double xi_r, double xi_tau,
                          double xi_phi, double theta, double xi_theta);

double s1_symbol(const BlackHoleParams& p, const ModFunctions& mods, double r,
                 const FrequencyTriplet& xi);
double s2_symbol(const BlackHoleParams& p, const ModFunctions& mods, double r,
                 const FrequencyTriplet& xi);
// (r²+a²)²Δ⁻¹(ξ_τ² - V)
double s2_bl(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);

double xi_rstar(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt);
// -Δξ_r² - 2S₁ξ_r + S₂
double wave_symbol(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt);
// -μ⁻¹(r²+a²)ξ̃² + S₂^BL, valid for Δ ≠ 0
double wave_symbol_rstar(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt);
// -|q|² g^{αβ}ξ_αξ_β for an extended point
double metric_contraction(const BlackHoleParams& p, const ModFunctions& mods,
                          const PhasePoint& pt);

using SymbolFn = std::function<double(double r, double xi_r, const FrequencyTriplet& xi)>;

struct SymbolWithDerivatives {
  SymbolFn value;
  SymbolFn d_r;     // optional; finite differences when empty
  SymbolFn d_xi_r;  // optional; finite differences when empty
};

// {A,B} = ∂_{ξ_r}A ∂_rB - ∂_rA ∂_{ξ_r}B
double poisson_bracket_reduced(const SymbolWithDerivatives& A, const SymbolWithDerivatives& B,
                               const PhasePoint& pt);
double poisson_bracket_reduced(const SymbolFn& A, const SymbolFn& B, const PhasePoint& pt);

// 4th-order central difference with step 1e-5·max(|x|, 1).
double central_difference(const std::function<double(double)>& f, double x);

// Pointwise values of (s₀, ∂_rs₀, s₁, ∂_rs₁, e₀).
struct TripleValues {
  double s0 = 0.0, ds0 = 0.0, s1 = 0.0, ds1 = 0.0, e0 = 0.0;
};

struct MultiplierTriple {
  std::function<double(double r, const FrequencyTriplet&)> s0, s1, e0;
  std::function<double(double r, const FrequencyTriplet&)> ds0, ds1;  // empty: finite differences

  TripleValues at(double r, const FrequencyTriplet& xi) const;
};

double sigma2_bulk(const BlackHoleParams& p, const ModFunctions& mods, const TripleValues& t,
                   const PhasePoint& pt);
double sigma2_bdr(const BlackHoleParams& p, const ModFunctions& mods, const TripleValues& t,
                  const PhasePoint& pt);
double sigma2_bulk(const BlackHoleParams& p, const ModFunctions& mods, const MultiplierTriple& mt,
                   const PhasePoint& pt);
double sigma2_bdr(const BlackHoleParams& p, const ModFunctions& mods, const MultiplierTriple& mt,
                  const PhasePoint& pt);

// ∂_r μ
double mu_prime(const BlackHoleParams& p, double r);

// Triples generating the four currents from scalar profiles and their r-derivatives.
TripleValues triple_h(const BlackHoleParams& p, double r, double h);
TripleValues triple_y(const BlackHoleParams& p, double r, double y, double dy);
TripleValues triple_f(const BlackHoleParams& p, double r, double f, double df);
// z = scale·(ξ_τ + χ_z ω_H ξ_φ̃)
TripleValues triple_z(const BlackHoleParams& p, const FrequencyTriplet& xi, double chi_z,
                      double dchi_z, double scale = 1.0);
TripleValues operator+(const TripleValues& a, const TripleValues& b);

// Closed forms of the bulk currents in terms of ξ̃ = ξ̃_{r*}.
double current_h(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt, double h);
double current_y(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt, double y,
                 double dy);
double current_f(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt, double f,
                 double df);
double current_z(const BlackHoleParams& p, double r, const FrequencyTriplet& xi, double xt,
                 double dchi_z, double scale = 1.0);

// Closed forms of the boundary (flux) symbols.
double flux_y(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt, double y);
double flux_f(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt, double f);
double flux_z(const BlackHoleParams& p, const ModFunctions& mods, const PhasePoint& pt,
              double chi_z, double scale = 1.0);

}  // namespace kerrlab

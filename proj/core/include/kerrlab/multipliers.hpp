#pragma once

#include "kerrlab/geometry.hpp"
#include "kerrlab/phase_space.hpp"
#include "kerrlab/symbols.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kerrlab {

struct MultiplierConstants {
  double A = 8.0;            // z amplitude
  double B = 16000.0;        // bump amplitude near r_max (SR/A)
  double c_prime = 0.01;     // weight of the -m/r² part of h
  double delta0 = 0.1;       // bump half-width scale around r_max (SR/A)
  double C2 = 1.0;           // TR2 y steepness, K = C2/δ_F²
  double c_y = 1.0;          // TR2 y(r₊(1+δ_H')) = -c_y
  double phi0 = 0.1;         // TR2 f template depth at the inner boundary
  double eps = 0.1;          // T/TR1 adaptive y slack
  double lambda = 1.0;       // T/TR1 adaptive y baseline slope
  double h1_scale = 1.0;     // multiplies the -c'm/r² part of h; test hook
};

struct ProfileValues {
  double f = 0.0, df = 0.0;
  double h = 0.0;
  double y = 0.0, dy = 0.0;
  double chi_z = 0.0, dchi_z = 0.0;
};

// Q = d ξ̃² + 2Eξ̃ + F = d(ξ̃ + η)² + remainder, η = E/d.
struct SquareCompletion {
  double d = 0.0, E = 0.0, F = 0.0;
  double eta() const { return E / d; }
  double remainder() const { return F - E * E / d; }
};

// f = c·expm1(κx), x = 1/r_max - 1/r, with f(r_in) = lo, f(r_max) = 0, f(R) = hi.
class ExpProfile {
 public:
  ExpProfile() = default;
  ExpProfile(double r_in, double r_max, double R, double lo, double hi);
  double value(double r) const;
  double derivative(double r) const;
  double kappa() const { return kappa_; }

 private:
  double r_max_ = 0.0, c_ = 0.0, kappa_ = 0.0;
};

// Profiles (f, h, y, z) of one regime at one frequency direction.
class MultiplierSet {
 public:
  MultiplierSet(const BlackHoleParams& p, const RegimeSettings& s, const MultiplierConstants& c,
                Regime regime, const FrequencyTriplet& xi, const FrequencyMargins& fm);

  Regime regime() const { return regime_; }
  const FrequencyTriplet& xi() const { return xi_; }
  ProfileValues eval(double r) const;
  SquareCompletion completion(double r) const;
  TripleValues triple(double r) const;
  double z_scale() const { return c_.A; }
  std::optional<double> r_max() const { return r_max_; }
  // TR2 only: right end of the y support.
  double y_support_end() const { return r_c_; }

 private:
  BlackHoleParams p_;
  RegimeSettings s_;
  MultiplierConstants c_;
  Regime regime_;
  FrequencyTriplet xi_;
  std::optional<double> r_max_;
  ExpProfile f_profile_;
  // adaptive y (T, TR1)
  double s1_ = 0.0, s2_ = 0.0, X_s1_ = 0.0, y_norm_ = 0.0;
  // TR2
  double r_c_ = 0.0, K_ = 0.0, y_scale_ = 0.0, ell_ = 0.0;

  double adaptive_exponent(double r) const;
};

MultiplierSet build_multipliers(const BlackHoleParams& p, const RegimeSettings& s,
                                const MultiplierConstants& c, Regime regime,
                                const FrequencyTriplet& xi);

// Σ_j χ_j² (f_j, h_j, y_j, z_j) at one direction, with the data P₀ needs.
struct AssembledMultipliers {
  std::array<double, kRegimeCount> chi{};
  std::vector<MultiplierSet> sets;  // one per regime with χ_j > 0
  double r_trap = 3.0;
  FrequencyTriplet xi;

  SquareCompletion completion(double r) const;
  double p0(double r) const;
  int dominant_regime() const;
};

AssembledMultipliers assemble_multipliers(const BlackHoleParams& p, const RegimeSettings& s,
                                          const MultiplierConstants& c,
                                          const FrequencyTriplet& xi);

// Σ_j χ_j²(Q^f + Q^h + Q^y + Q^z) from the closed-form currents.
double total_bulk_current(const BlackHoleParams& p, const ModFunctions& mods,
                          const AssembledMultipliers& am, const PhasePoint& pt);
// Same current via the generic bulk symbol of the summed triple.
double total_bulk_generic(const BlackHoleParams& p, const ModFunctions& mods,
                          const AssembledMultipliers& am, const PhasePoint& pt);

struct CertGrid {
  int n_r = 2000;
  int n_alpha = 200;  // polar angle from the ξ_τ axis
  int n_beta = 200;   // ξ_φ̃ = sinα sinβ, Λ = sinα cosβ, |β| ≤ π/4
  unsigned workers = 0;
  // Extra directions checked in addition to the lattice (search witnesses).
  std::vector<FrequencyTriplet> extra;
  bool fail_fast = false;
};

std::vector<FrequencyTriplet> direction_lattice(const BlackHoleParams& p, int n_alpha, int n_beta,
                                                std::vector<int>* coarse_flags = nullptr);
std::vector<double> certification_radii(const BlackHoleParams& p, const RegimeSettings& s, int n_r);

struct CertReport {
  bool pass = false;
  double c_min = 0.0;         // inf over the grid of remainder / P₀
  double c_min_coarse = 0.0;  // same on the nested half-resolution grid
  bool monotone = false;      // c_min ≤ c_min_coarse
  double d_min = 0.0;         // inf of d/(r²+a²)
  double worst_r = 0.0;
  FrequencyTriplet worst_xi;
  int worst_regime = -1;
  std::array<double, kRegimeCount> c_min_by_regime{};  // keyed by the dominant regime
  std::array<double, kRegimeCount> worst_r_by_regime{};
  std::array<FrequencyTriplet, kRegimeCount> worst_xi_by_regime{};
  long long points = 0;
  // Directions whose minimum is at or below tolerance, worst first (at most 32).
  std::vector<FrequencyTriplet> failing_directions;
  int directions = 0;
  int skipped = 0;  // inadmissible lattice nodes
  CertGrid grid;
  std::string message;
};

CertReport certify_bulk(const BlackHoleParams& p, const RegimeSettings& s,
                        const MultiplierConstants& c, const CertGrid& grid,
                        double tolerance = 1e-10);

struct BoundaryRegimeReport {
  int regime = 0;
  bool pass = false;
  int samples = 0;
  double C_fit = 0.0;       // at r₊(1+δ_H')
  double C_fit_half = 0.0;  // at r₊(1+δ_H'/2)
  double min_rho_radicand = 0.0;
  double min_varpi_radicand = 0.0;
  FrequencyTriplet worst_xi;
  double worst_xi_r = 0.0;
};

struct BoundaryReport {
  bool pass = false;
  std::array<BoundaryRegimeReport, kRegimeCount> regimes{};
  std::string message;
};

struct BoundaryTerms {
  double sigma_bdr = 0.0;  // Σ σ_BDR of the regime's (f, h, y, z)
  double rho2 = 0.0, varpi2 = 0.0;
  double residual() const { return sigma_bdr + rho2 + varpi2; }
};

BoundaryTerms boundary_terms(const BlackHoleParams& p, const ModFunctions& mods,
                             const RegimeSettings& s, const MultiplierConstants& c,
                             const MultiplierSet& set, double xi_r);

BoundaryReport certify_boundary(const BlackHoleParams& p, const ModFunctions& mods,
                                const RegimeSettings& s, const MultiplierConstants& c,
                                int n_alpha = 64, int n_beta = 64);

struct SearchOptions {
  CertGrid probe{400, 40, 40, 0, {}, true};
  CertGrid final_grid{};
  int boundary_alpha = 48, boundary_beta = 48;
  int max_final_runs = 6;
};

struct SearchResult {
  bool success = false;
  MultiplierConstants constants;
  CertReport bulk;
  BoundaryReport boundary;
  int probes = 0;
  int final_runs = 0;
  std::string message;
};

// Deterministic lattice search over (A, δ₀, c', B); the TR constants keep their defaults.
SearchResult search_constants(const BlackHoleParams& p, const ModFunctions& mods,
                              const RegimeSettings& s, const SearchOptions& opt = {},
                              const MultiplierConstants& base = {});

}  // namespace kerrlab

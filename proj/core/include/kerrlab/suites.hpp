#pragma once

#include "kerrlab/geometry.hpp"
#include "kerrlab/multipliers.hpp"
#include "kerrlab/phase_space.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace kerrlab {

// Randomized invariant checks shared by the CLI and the acceptance driver. Every report
// carries its worst point so a failure can be reproduced from the seed.

struct ChartCheck {
  double max_identity_defect = 0.0;  // max |g·g⁻¹ - I|
  double max_det_error = 0.0;        // max |√|det g| - |q|² sinθ| / (|q|² sinθ)
  double worst_r = 0.0;
  double worst_theta = 0.0;
};

struct GeometrySuiteReport {
  bool pass = false;
  std::array<ChartCheck, 3> charts{};  // indexed by Chart
  BlendReport blends;
  SpacelikeReport spacelike;
  int samples = 0;
};

GeometrySuiteReport geometry_suite(const BlackHoleParams& p, const ModFunctions& mods,
                                   int samples, std::uint64_t seed);

struct PotentialSuiteReport {
  bool pass = false;
  double max_rmax = 0.0;
  FrequencyTriplet max_rmax_xi;
  double rmax_schwarzschild_error = 0.0;  // max |r_max - 3m| (a = 0 only)
  double horizon_identity_error = 0.0;    // max relative |(ξ_τ²-V)(r₊) - k₊²|
  double derivative_error = 0.0;          // max relative |∂_rV - FD|
  double worst_derivative_r = 0.0;
  FrequencyTriplet worst_derivative_xi;
  int samples = 0;
  int without_max = 0;  // V strictly decreasing (possible only for a ≠ 0)
};

PotentialSuiteReport potential_suite(const BlackHoleParams& p, int samples, int fd_samples,
                                     std::uint64_t seed);

// Superradiant samples 0 < -ξ_τξ_φ̃ ≤ ω_Hξ_φ̃² must sit strictly below the barrier top.
struct SuperradianceSuiteReport {
  bool pass = false;
  double min_margin = 0.0;  // min (V(r_max) - ξ_τ²)/Λ²
  FrequencyTriplet worst_xi;
  int samples = 0;
};

SuperradianceSuiteReport superradiance_suite(const BlackHoleParams& p, int samples,
                                             std::uint64_t seed);

struct SymbolSuiteReport {
  bool pass = false;
  double current_error = 0.0;     // closed forms vs generic symbol, exact derivatives
  double current_fd_error = 0.0;  // same with finite-difference ∂_r
  double flux_error = 0.0;        // flux closed forms vs generic boundary symbol
  double s2_error = 0.0;          // S₂ against its Boyer–Lindquist form
  double contraction_error = 0.0; // wave symbol against -|q|²g^{αβ}ξ_αξ_β
  double worst_r = 0.0;
  FrequencyTriplet worst_xi;
  std::string worst_check;
  int samples = 0;
};

SymbolSuiteReport symbol_suite(const BlackHoleParams& p, const ModFunctions& mods, int samples,
                               std::uint64_t seed);

struct CoverSuiteReport {
  bool pass = false;
  long uncovered = 0;
  long superradiant_outside_SR = 0;
  double max_partition_defect = 0.0;  // max |Σχ_j² - 1| for |Ξ| ≥ 2
  FrequencyTriplet worst_xi;
  std::array<long, kRegimeCount> counts{};  // samples whose dominant χ is regime j
  long samples = 0;
};

CoverSuiteReport cover_suite(const BlackHoleParams& p, const RegimeSettings& s, long samples,
                             std::uint64_t seed, unsigned workers = 0);

// δ_F fit, constant search and the boundary check at the final constants.
struct CertifyOptions {
  std::optional<double> delta_F;  // fitted when absent
  std::optional<double> theta;
  double R = 20.0;
  int fit_samples = 20000;
  std::uint64_t seed = 7;
  CertGrid grid;
  int boundary_alpha = 64, boundary_beta = 64;
  // Skip the search and certify these constants directly.
  std::optional<MultiplierConstants> fixed;
  // Multiplies the -c'm/r² part of h after the search (failure injection).
  double corrupt_h = 1.0;
};

struct CertifyOutcome {
  bool pass = false;
  NonTrappingFit fit;
  RegimeSettings settings;
  MultiplierConstants constants;
  CertReport bulk;
  BoundaryReport boundary;
  bool searched = false;
  int probes = 0;
  std::string message;
};

CertifyOutcome certify_all(const BlackHoleParams& p, const ModFunctions& mods,
                           const CertifyOptions& opt);

}  // namespace kerrlab

#pragma once

#include "kerrlab/params.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace kerrlab {

// Ξ = (ξ_τ, ξ_φ̃, Λ). Regime thresholds below assume m = 1 (callers rescale).
struct FrequencyTriplet {
  double xi_tau = 0.0;
  double xi_phi = 0.0;
  double Lambda = 0.0;

  double norm() const;
  FrequencyTriplet scaled(double lambda) const {
    return {lambda * xi_tau, lambda * xi_phi, lambda * Lambda};
  }
};

// Λ² ≥ max{ξ_φ̃², 2|a ξ_φ̃ ξ_τ|} up to a relative tolerance.
bool admissible(const BlackHoleParams& p, const FrequencyTriplet& xi, double rel_tol = 1e-12);

double potential_V(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);
double dV_dr(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);
// (r²+a²)³ ∂_r V, a cubic in r.
double scaled_first(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);
// d/dr of scaled_first.
double scaled_second(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);
// ξ_τ² - V
double radial_gap(const BlackHoleParams& p, double r, const FrequencyTriplet& xi);
double k_plus(const BlackHoleParams& p, const FrequencyTriplet& xi);

enum class CriticalCase { StrictlyDecreasing, UniqueMax, MinThenMax };

struct CriticalPointReport {
  CriticalCase kind = CriticalCase::StrictlyDecreasing;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<double> V_at_max;
};

CriticalPointReport critical_points(const BlackHoleParams& p, const FrequencyTriplet& xi);

bool is_superradiant(const BlackHoleParams& p, const FrequencyTriplet& xi);

enum Regime : int { kSR = 0, kA = 1, kT = 2, kTR1 = 3, kTR2 = 4 };
inline constexpr int kRegimeCount = 5;
const char* regime_name(int regime);

struct RegimeSettings {
  double delta_F = 0.0;
  // Floor on (V(r_max) - ξ_τ²)/Λ² required by the superradiant construction.
  double theta = 0.0;
  double r_inner = 0.0;  // r₊(1+δ_H')
  double R = 20.0;
};

RegimeSettings make_regime_settings(const BlackHoleParams& p, double delta_F, double theta,
                                    double R = 20.0);

// Normalized frequency data shared by the weights.
struct FrequencyMargins {
  double p = 0.0;  // -ξ_τξ_φ̃/Λ²
  double w = 0.0;  // ξ_φ̃²/Λ²
  double u = 0.0;  // ξ_τ²/Λ²
  double g_V = 0.0;  // (V(r_max)-ξ_τ²)/Λ² for a single max, else -inf
  double mu_X = 0.0;  // min of (ξ_τ²-V)/Λ² over {r_inner, r_max, R}
  CriticalPointReport crit;
};

FrequencyMargins frequency_margins(const BlackHoleParams& p, const FrequencyTriplet& xi,
                                   const RegimeSettings& s);

struct RegimeMembership {
  bool in_SR = false, in_A = false, in_T = false, in_TR = false, in_TR1 = false, in_TR2 = false;
  bool in_exclusion_band = false;  // the band removed from A/T/TR in the regime definitions
  std::array<double, kRegimeCount> chi{};
  double delta_F = 0.0;
  std::optional<double> r3, r4;
  FrequencyMargins margins;
};

RegimeMembership classify_regimes(const BlackHoleParams& p, const FrequencyTriplet& xi,
                                  const RegimeSettings& s);

// Unnormalized direction weights (homogeneous of degree 0, no low-frequency cut).
std::array<double, kRegimeCount> regime_weights(const BlackHoleParams& p,
                                                const FrequencyTriplet& xi,
                                                const RegimeSettings& s,
                                                const FrequencyMargins* margins = nullptr);
// χ_j with Σχ_j² = 1 for |Ξ| ≥ 2 and χ_j = 0 for |Ξ| ≤ 1.
std::array<double, kRegimeCount> partition_of_unity(const BlackHoleParams& p,
                                                    const FrequencyTriplet& xi,
                                                    const RegimeSettings& s);
// χ_j normalized on the direction only (what the |Ξ| ≥ 2 region sees).
std::array<double, kRegimeCount> direction_partition(const BlackHoleParams& p,
                                                     const FrequencyTriplet& xi,
                                                     const RegimeSettings& s,
                                                     const FrequencyMargins* margins = nullptr);

// Smooth indicator equal to 1 on supp χ_TR2, supported in the TR2 set.
double trap_indicator(const BlackHoleParams& p, const FrequencyTriplet& xi,
                      const RegimeSettings& s, const FrequencyMargins* margins = nullptr);
double r_trap(const BlackHoleParams& p, const FrequencyTriplet& xi, const RegimeSettings& s,
              const FrequencyMargins* margins = nullptr);

// Largest r in [lo, hi] with ξ_τ²-V > level·Λ² (bisection), or lo if none.
double gap_threshold_radius(const BlackHoleParams& p, const FrequencyTriplet& xi, double lo,
                            double hi, double level);

// Rejection sampler on the admissible part of the unit sphere.
class AdmissibleSampler {
 public:
  AdmissibleSampler(const BlackHoleParams& p, std::uint64_t seed) : p_(p), rng_(seed) {}
  FrequencyTriplet next();

 private:
  BlackHoleParams p_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct NonTrappingFit {
  double delta_F = 0.0;
  int k = -1;
  double theta = 0.0;
  double b_superradiant = 0.0;  // min (V(r_max)-ξ_τ²)/Λ² over superradiant samples
  double b_point1 = 0.0;        // min -(r-r_max)V' r⁴/(Λ²(r-r_max)²) over the β = δ_F set
  double min_rmax_gap = 0.0;    // min (r_max - r₊) over that set
  bool success = false;
};

// Scans δ_F = 2^-k (m-a), k = 0..12, returning the largest admissible value.
NonTrappingFit search_delta_F(const BlackHoleParams& p, double r_inner, double R, int samples,
                              std::uint64_t seed);

}  // namespace kerrlab

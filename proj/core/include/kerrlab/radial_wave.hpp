#pragma once

#include "kerrlab/params.hpp"
#include "kerrlab/phase_space.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace kerrlab {

using cplx = std::complex<double>;

// r* with dr* = μ⁻¹dr and r*(3m) = 0.
double tortoise(const BlackHoleParams& p, double r);
// Same, from x = r - r₊ (keeps precision near the horizon).
double tortoise_from_gap(const BlackHoleParams& p, double x);
double inverse_tortoise(const BlackHoleParams& p, double r_star);
// r - r₊ at the given r*.
double inverse_tortoise_gap(const BlackHoleParams& p, double r_star);

struct ModeSpec {
  int m_az = 0;
  double Lambda0 = 0.0;

  double V_c(const BlackHoleParams& p, double r) const;
  double W(const BlackHoleParams& p, double r) const;
  // The phase-space triplet at time frequency ω.
  FrequencyTriplet triplet(double omega) const { return {omega, double(m_az), Lambda0}; }
};

void validate_mode(const ModeSpec& mode);

enum class BoundaryKind { Absorbing, Reflecting };

struct WaveGrid {
  double rs_left = -60.0;
  double rs_right = 60.0;
  double h = 0.05;
  double cfl = 0.5;  // Δt/Δr*
};

// u(0) = exp(-(r*-c)²/(2σ²)) e^{iω₀ r*·dir}; the time derivative follows the direction.
struct GaussianPacket {
  double center = 0.0;
  double width = 2.0;
  double omega0 = 0.5;
  // -1: moving toward the horizon, +1: outgoing, 0: standing (u_t = -iω₀u).
  int direction = -1;
  double amplitude = 1.0;
};

struct WaveState {
  std::vector<double> r_star;
  std::vector<double> r;
  std::vector<cplx> u, v;
  double t = 0.0;
};

struct WaveDiagnostics {
  double t = 0.0;
  double E = 0.0;            // discrete energy with V_c
  double E_surrogate = 0.0;  // nonnegative variant
  double M = 0.0;            // Morawetz accumulator, trapping-degenerate weight
  double M_plain = 0.0;      // same with the degeneracy removed
  double flux_left = 0.0;    // energy rate through the horizon side (positive = leaving)
  double flux_right = 0.0;   // energy rate through the outer side (positive = leaving)
};

struct EvolveOptions {
  WaveGrid grid;
  double T_final = 200.0;
  BoundaryKind boundary = BoundaryKind::Absorbing;
  int record_every = 1;
  std::optional<double> r_trap;  // defaults to 3m
  std::vector<double> probes;    // r* positions sampled every step
};

struct EvolveResult {
  std::vector<WaveDiagnostics> series;
  std::vector<double> probe_times;
  std::vector<std::vector<cplx>> probe_signals;
  WaveState final_state;
  long steps = 0;
};

WaveState make_state(const BlackHoleParams& p, const WaveGrid& grid);
WaveState packet_state(const BlackHoleParams& p, const WaveGrid& grid, const GaussianPacket& pk);

// RK4 method of lines on a summation-by-parts Laplacian with weakly imposed boundary data.
EvolveResult evolve(const BlackHoleParams& p, const ModeSpec& mode, WaveState init,
                    const EvolveOptions& opt);

struct ScatterResult {
  double omega = 0.0;
  double k = 0.0;  // ω + m_az ω_H
  cplx R, T;
  double R2 = 0.0, T2 = 0.0;
  double flux_residual = 0.0;
  bool superradiant = false;
  bool admissible = true;  // Λ₀² ≥ 2|a m_az ω|
};

struct ScatterOptions {
  double rs_left = -60.0;
  double rs_right = 60.0;
  double tolerance = 1e-12;
};

ScatterResult scattering_oracle(const BlackHoleParams& p, const ModeSpec& mode, double omega,
                                const ScatterOptions& opt = {});
std::vector<ScatterResult> scattering_scan(const BlackHoleParams& p, const ModeSpec& mode,
                                           const std::vector<double>& omegas,
                                           const ScatterOptions& opt = {}, unsigned workers = 0);

struct MorawetzRow {
  GaussianPacket packet;
  double r_trap = 3.0;
  double sup_energy_ratio = 0.0;  // sup_t E(t)/E(0)
  double sup_surrogate_ratio = 0.0;
  double M_ratio = 0.0;        // M(T)/E(0)
  double M_plain_ratio = 0.0;  // undegenerate M(T)/E(0)
  double trapping_factor = 0.0;  // M_plain / M
};

// r_trap of each packet comes from the phase-space map at its carrier frequency.
std::vector<MorawetzRow> morawetz_experiment(const BlackHoleParams& p, const ModeSpec& mode,
                                             const std::vector<GaussianPacket>& packets,
                                             const RegimeSettings& settings,
                                             const EvolveOptions& opt, unsigned workers = 0);

struct TransmissionRow {
  double omega = 0.0;
  double T_time = 0.0;       // |T| from the time-domain run
  double T_frequency = 0.0;  // |T| from the oracle
  double relative_error = 0.0;
};

// Sends a left-moving packet from the outer zone and compares transmitted spectra.
std::vector<TransmissionRow> transmission_comparison(const BlackHoleParams& p,
                                                     const ModeSpec& mode,
                                                     const GaussianPacket& packet,
                                                     const WaveGrid& grid, double probe_rs,
                                                     double T_final,
                                                     const std::vector<double>& omegas);

}  // namespace kerrlab

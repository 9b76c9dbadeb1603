#pragma once

#include <algorithm>
#include <cmath>

namespace kerrlab::smooth {

// exp(-1/x) for x > 0, zero otherwise; the C^∞ building block for all cutoffs.
inline double flat(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// C^∞ ramp: 0 for x ≤ 0, 1 for x ≥ 1.
inline double step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double s0 = flat(x);
  const double s1 = flat(1.0 - x);
  return s0 / (s0 + s1);
}

inline double step_prime(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double s0 = flat(x);
  const double s1 = flat(1.0 - x);
  const double y = 1.0 - x;
  const double den = s0 + s1;
  // s'(x) = s(x)/x²
  return (s0 / (x * x) * s1 + s0 * s1 / (y * y)) / (den * den);
}

// Margin ramp used by the partition: 0 below 0.1, 1 above 0.9.
inline double ramp(double t) { return step((t - 0.1) / 0.8); }

// Quintic Hermite smoothstep with vanishing first and second derivatives at 0 and 1.
struct Quintic {
  double v, d1, d2;
};

inline Quintic quintic(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double x2 = x * x;
  const double x3 = x2 * x;
  return {x3 * (10.0 - 15.0 * x + 6.0 * x2), 30.0 * x2 * (1.0 - x) * (1.0 - x),
          60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)};
}

}  // namespace kerrlab::smooth

#include "kerrlab/params.hpp"

#include "kerrlab/errors.hpp"

#include <sstream>

namespace kerrlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ExtremalOrSuper: return "ExtremalOrSuper";
    case ErrorCode::NonpositiveMass: return "NonpositiveMass";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::HorizonSingular: return "HorizonSingular";
    case ErrorCode::BlendInfeasible: return "BlendInfeasible";
    case ErrorCode::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorCode::InadmissibleFrequency: return "InadmissibleFrequency";
    case ErrorCode::CoverGap: return "CoverGap";
    case ErrorCode::ConstantSearchFailed: return "ConstantSearchFailed";
    case ErrorCode::PositivityFailure: return "PositivityFailure";
    case ErrorCode::BoundarySignFailure: return "BoundarySignFailure";
    case ErrorCode::BelowHorizon: return "BelowHorizon";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::NaNDetected: return "NaNDetected";
    case ErrorCode::StiffFailure: return "StiffFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

BlackHoleParams new_params(double a, double m) {
  if (!(m > 0.0)) {
    std::ostringstream os;
    os << "mass must be positive, got m=" << m;
    throw KerrError(ErrorCode::NonpositiveMass, os.str());
  }
  const double abs_a = std::fabs(a);
  if (!(abs_a < m)) {
    std::ostringstream os;
    os << "|a|=" << abs_a << " is not below m=" << m;
    throw KerrError(ErrorCode::ExtremalOrSuper, os.str());
  }
  BlackHoleParams p;
  p.m = m;
  p.a = abs_a;
  const double s = std::sqrt((m - abs_a) * (m + abs_a));
  p.r_plus = m + s;
  // r₋ = a²/r₊ avoids cancellation for small a
  p.r_minus = abs_a * abs_a / p.r_plus;
  p.omega_H = abs_a / (2.0 * m * p.r_plus);
  return p;
}

SmallConstants default_constants(const BlackHoleParams& p) {
  SmallConstants c{};
  c.delta_BL = (1.0 - p.a / p.m) / 10.0;
  c.delta_red = c.delta_BL / 10.0;
  c.delta_H = c.delta_red / 10.0;
  c.delta_H_prime = 1.5 * c.delta_H;
  return c;
}

}  // namespace kerrlab

#pragma once

// Analytic scattering amplitudes for two delta-coupled qubits.
//
// Plane waves are referenced to the scatterer positions: incident/reflected
// waves as e^{+-ik(x + d/2)} on the left, transmitted waves as e^{ik(x - d/2)}
// on the right. With that convention a free particle has T = e^{ikd}.

#include "qscatter/types.hpp"

namespace qscatter {

/// Coefficients of a single scatterer with dimensionless strength omega.
SiteCoefficients site_coefficients(double omega, ModelKind model);

/// Two-site amplitudes (unit incident amplitude in the NoFlip channel).
AmplitudeSet amplitudes(const CheckedPoint& pt);
inline AmplitudeSet amplitudes(const DimensionlessPoint& pt) { return amplitudes(validate(pt)); }

/// Heisenberg-contact site coefficients renormalized by the bounces of the
/// flipped particle between the two sites.
struct DressedCoefficients {
  cplx t_a, r_a, sigma_a;
  cplx t_b, r_b, sigma_b;
};

/// Throws UnsupportedModel for SpinExchange.
DressedCoefficients dressed_coefficients(const CheckedPoint& pt);

struct TruncatedAmplitudeSet {
  AmplitudeSet amplitudes;
  int bounce_order = 0;
};

/// Spin-exchange amplitudes keeping only paths with at most n round trips
/// between the sites. n = 0 keeps the direct paths. Throws UnsupportedModel
/// for HeisenbergContact.
TruncatedAmplitudeSet truncated_amplitudes(const CheckedPoint& pt, int n);

/// Upper bounds on |truncated(n) - exact| per amplitude, from the geometric
/// tail of each bounce series (same field order as AmplitudeSet).
std::array<double, 6> truncation_error_bounds(const CheckedPoint& pt, int n);

/// Correspondence with the interaction-time picture for one spin-exchange
/// site: the rotation angle g*tau with cos = 1/sqrt(1+W^2), sin = W/sqrt(1+W^2),
/// and the probability |t|^2 + |f|^2 that X is transmitted at all.
struct InteractionTime {
  double rotation_angle;
  double transmit_probability;
};
InteractionTime interaction_time_map(double omega);

}  // namespace qscatter

#pragma once

// Post-selected two-qubit states and the quantities reported for them:
// concurrence, amplitude ratio a, and the detection probability per side.

#include "qscatter/types.hpp"

namespace qscatter {

enum class Side { Transmitted, Reflected };

/// Unnormalized c_ud |up down> + c_du |down up> left on AB after detecting
/// X up on one side.
struct PostSelectedState {
  cplx coeff_updown;
  cplx coeff_downup;
  Side side = Side::Transmitted;
};

PostSelectedState post_selected_state(const AmplitudeSet& amps, Side side);

struct ConcurrenceResult {
  double concurrence = 0.0;
  double ratio_a = 0.0;  // |c_du / c_ud|, +inf when only c_du is nonzero
  bool defined = false;  // false when nothing is detected (both weights 0)
};

/// C = 2|xy| / (|x|^2 + |y|^2), i.e. 2a / (1 + a^2) without forming a.
ConcurrenceResult concurrence_and_ratio(const PostSelectedState& s);

double probability(const PostSelectedState& s);

ObservableSet observables_from(const AmplitudeSet& amps);
ObservableSet observables_at(const CheckedPoint& pt);
inline ObservableSet observables_at(const DimensionlessPoint& pt) { return observables_at(validate(pt)); }

// Closed scalar forms for the spin-exchange model in terms of s = sin^2(kd).
namespace spin_exchange {
double ratio_a(double omega_a, double omega_b, double sin2kd);
double concurrence(double omega_a, double omega_b, double sin2kd);
double probability(double omega_a, double omega_b, double sin2kd);
}  // namespace spin_exchange

}  // namespace qscatter

#pragma once

// Optimization of concurrence and detection probability over the
// spin-exchange parameter space (Omega_A, Omega_B, sin^2 kd).
//
// Key facts used here, all for the spin-exchange model:
//  * a = (W_A/W_B) sqrt(1 + 4 W_B^2 (1 + W_B^2) s), s = sin^2 kd, so a ranges
//    over [W_A/W_B, (W_A/W_B)(1 + 2 W_B^2)] as s goes from 0 to 1.
//  * P(s) is a Moebius map (A + B s)/(C + D s) with
//    BC - AD = B (1 + u + u W_B^2) >= 0, u = W_A^2 + W_B^2, so P is
//    nondecreasing in s and s = 1 (resonance) maximizes it.
//  * C = 1 needs a = 1, possible iff W_B/(1 + 2 W_B^2) <= W_A <= W_B.

#include <optional>
#include <string>

#include "qscatter/types.hpp"

namespace qscatter {

/// P at the resonance condition sin^2 kd = 1. Its supremum over the
/// quadrant is 1/2, approached as (W_A, W_B) -> (1/sqrt 2, inf).
double probability_at_resonance(double omega_a, double omega_b);

struct UnitConcurrencePhase {
  std::optional<double> sin2kd;  // empty when C = 1 is unreachable
  std::string reason;            // why it is unreachable

  bool feasible() const { return sin2kd.has_value(); }
};

UnitConcurrencePhase unit_concurrence_phase(double omega_a, double omega_b);

enum class Regime { LeftRegion, UnitConcurrenceRegion, RightRegion };
std::string_view to_string(Regime r);

struct OptimalityReport {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double phase_choice = 0.0;  // sin^2 kd at the optimum
  double concurrence = 0.0;
  double probability = 0.0;
  Regime regime = Regime::LeftRegion;
  bool concurrence_defined = true;  // false only at W_A = W_B = 0
};

/// Best concurrence over all phases at fixed couplings, and P at that phase.
OptimalityReport optimal_concurrence(double omega_a, double omega_b);

struct GlobalOptimum {
  double omega_a;
  double omega_b;
  double probability;
  int iterations;
};

/// Maximizes P along the unit-concurrence resonance curve
/// W_A = W_B / (1 + 2 W_B^2), sin^2 kd = 1.
GlobalOptimum find_global_p_opt();

/// P along that curve as a function of W_B.
double resonance_curve_probability(double omega_b);

/// Root of the stationarity condition along the curve, evaluated from the
/// cube-root expression; used to cross-check find_global_p_opt.
double p_opt_omega_b_closed_form();

}  // namespace qscatter

#include "qscatter/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qscatter/observables.hpp"

namespace qscatter {
namespace {

void require_couplings(double omega_a, double omega_b) {
  if (!(omega_a >= 0.0) || !std::isfinite(omega_a)) {
    throw DomainError("omega_a", "omega_a must be finite and non-negative");
  }
  if (!(omega_b >= 0.0) || !std::isfinite(omega_b)) {
    throw DomainError("omega_b", "omega_b must be finite and non-negative");
  }
}

// Forward-mode dual number for the derivative along the C = 1 curve.
struct Dual {
  double v;
  double d;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }

template <class T>
T curve_probability(T wb) {
  const T wa = wb / (1.0 + 2.0 * (wb * wb));
  const T a2 = wa * wa;
  const T b2 = wb * wb;
  const T cross = 4.0 * (a2 * b2);
  const T s = 1.0 + (a2 + b2);
  return ((a2 + b2) + cross * (1.0 + b2)) / (s * s + cross * ((1.0 + a2) * (1.0 + b2)));
}

double curve_slope(double wb) { return curve_probability(Dual{wb, 1.0}).d; }

}  // namespace

double probability_at_resonance(double omega_a, double omega_b) {
  require_couplings(omega_a, omega_b);
  return spin_exchange::probability(omega_a, omega_b, 1.0);
}

UnitConcurrencePhase unit_concurrence_phase(double omega_a, double omega_b) {
  require_couplings(omega_a, omega_b);
  UnitConcurrencePhase out;
  if (omega_a == 0.0) {
    out.reason = "flip amplitude of A vanishes";
    return out;
  }
  if (omega_a > omega_b) {
    out.reason = "omega_a > omega_b: a >= omega_a/omega_b > 1 for every phase";
    return out;
  }
  if (omega_a * (1.0 + 2.0 * omega_b * omega_b) < omega_b) {
    out.reason = "omega_a < omega_b/(1+2 omega_b^2): a < 1 for every phase";
    return out;
  }
  const double a2 = omega_a * omega_a;
  const double b2 = omega_b * omega_b;
  const double s = (b2 - a2) / (4.0 * a2 * b2 * (1.0 + b2));
  out.sin2kd = std::clamp(s, 0.0, 1.0);
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::LeftRegion:
      return "LeftRegion";
    case Regime::UnitConcurrenceRegion:
      return "UnitConcurrenceRegion";
    case Regime::RightRegion:
      return "RightRegion";
  }
  return "?";
}

OptimalityReport optimal_concurrence(double omega_a, double omega_b) {
  require_couplings(omega_a, omega_b);
  OptimalityReport rep;
  rep.omega_a = omega_a;
  rep.omega_b = omega_b;

  const UnitConcurrencePhase unit = unit_concurrence_phase(omega_a, omega_b);
  if (unit.feasible()) {
    rep.regime = Regime::UnitConcurrenceRegion;
    rep.phase_choice = *unit.sin2kd;
    rep.concurrence = 1.0;
  } else if (omega_a > omega_b) {
    rep.regime = Regime::RightRegion;
    rep.phase_choice = 0.0;
    rep.concurrence = spin_exchange::concurrence(omega_a, omega_b, 0.0);
  } else {
    // includes omega_a = 0, where a = 0 at every phase
    rep.regime = Regime::LeftRegion;
    rep.phase_choice = 1.0;
    rep.concurrence = spin_exchange::concurrence(omega_a, omega_b, 1.0);
  }
  rep.probability = spin_exchange::probability(omega_a, omega_b, rep.phase_choice);
  rep.concurrence_defined = rep.probability > 0.0;
  return rep;
}

double resonance_curve_probability(double omega_b) {
  require_couplings(0.0, omega_b);
  return curve_probability(omega_b);
}

GlobalOptimum find_global_p_opt() {
  double lo = 0.1;
  double hi = 10.0;
  if (!(curve_slope(lo) > 0.0) || !(curve_slope(hi) < 0.0)) {
    throw std::logic_error("P along the unit-concurrence curve is not bracketed by [0.1, 10]");
  }

  // Golden-section search down to 1e-10 in omega_b.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = curve_probability(x1);
  double f2 = curve_probability(x2);
  int iterations = 0;
  while (hi - lo > 1e-10) {
    ++iterations;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = curve_probability(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = curve_probability(x1);
    }
  }

  // P is flat to O(dx^2) near the maximum, so comparisons of P alone stall
  // around sqrt(eps). Widen slightly and finish on the sign of dP/dW_B.
  lo = std::max(0.1, lo - 1e-6);
  hi = std::min(10.0, hi + 1e-6);
  while (hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (curve_slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  const double wb = 0.5 * (lo + hi);
  return {wb / (1.0 + 2.0 * wb * wb), wb, curve_probability(wb), iterations};
}

double p_opt_omega_b_closed_form() {
  const double r = 3.0 * std::sqrt(114.0);
  return std::sqrt((1.0 + std::cbrt(37.0 - r) + std::cbrt(37.0 + r)) / 6.0);
}

}  // namespace qscatter

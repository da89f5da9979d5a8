#include "qscatter/observables.hpp"

#include <cmath>
#include <limits>

#include "qscatter/closed_form.hpp"

namespace qscatter {

PostSelectedState post_selected_state(const AmplitudeSet& amps, Side side) {
  if (side == Side::Transmitted) return {amps.t_flipb, amps.t_flipa, side};
  return {amps.r_flipb, amps.r_flipa, side};
}

ConcurrenceResult concurrence_and_ratio(const PostSelectedState& s) {
  const double x = std::abs(s.coeff_updown);
  const double y = std::abs(s.coeff_downup);
  ConcurrenceResult out;
  if (x == 0.0 && y == 0.0) return out;
  out.defined = true;
  out.ratio_a = x == 0.0 ? std::numeric_limits<double>::infinity() : y / x;
  // 2xy/(x^2+y^2) written to avoid overflow/underflow of the squares
  const double hi = std::max(x, y);
  const double lo = std::min(x, y) / hi;
  out.concurrence = 2.0 * lo / (1.0 + lo * lo);
  return out;
}

double probability(const PostSelectedState& s) {
  return std::norm(s.coeff_updown) + std::norm(s.coeff_downup);
}

ObservableSet observables_from(const AmplitudeSet& amps) {
  ObservableSet o;
  const PostSelectedState st = post_selected_state(amps, Side::Transmitted);
  const PostSelectedState sr = post_selected_state(amps, Side::Reflected);
  const ConcurrenceResult ct = concurrence_and_ratio(st);
  const ConcurrenceResult cr = concurrence_and_ratio(sr);
  o.concurrence_t = ct.concurrence;
  o.ratio_a_t = ct.ratio_a;
  o.concurrence_t_defined = ct.defined;
  o.probability_t = probability(st);
  o.concurrence_r = cr.concurrence;
  o.ratio_a_r = cr.ratio_a;
  o.concurrence_r_defined = cr.defined;
  o.probability_r = probability(sr);
  return o;
}

ObservableSet observables_at(const CheckedPoint& pt) { return observables_from(amplitudes(pt)); }

namespace spin_exchange {

double ratio_a(double omega_a, double omega_b, double sin2kd) {
  const double wb2 = omega_b * omega_b;
  const double root = std::sqrt(1.0 + 4.0 * wb2 * (1.0 + wb2) * sin2kd);
  if (omega_b == 0.0) {
    return omega_a == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : std::numeric_limits<double>::infinity();
  }
  return omega_a / omega_b * root;
}

double concurrence(double omega_a, double omega_b, double sin2kd) {
  const double a = ratio_a(omega_a, omega_b, sin2kd);
  if (std::isnan(a)) return 0.0;
  if (std::isinf(a)) return 0.0;
  return 2.0 * a / (1.0 + a * a);
}

double probability(double omega_a, double omega_b, double sin2kd) {
  const double a2 = omega_a * omega_a;
  const double b2 = omega_b * omega_b;
  const double cross = 4.0 * a2 * b2 * sin2kd;
  const double s = 1.0 + a2 + b2;
  return (a2 + b2 + cross * (1.0 + b2)) / (s * s + cross * (1.0 + a2) * (1.0 + b2));
}

}  // namespace spin_exchange
}  // namespace qscatter

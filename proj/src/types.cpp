#include "qscatter/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qscatter {

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::SpinExchange:
      return "xy";
    case ModelKind::HeisenbergContact:
      return "heis";
  }
  return "?";
}

ModelKind parse_model(std::string_view s) {
  if (s == "xy" || s == "spin-exchange") return ModelKind::SpinExchange;
  if (s == "heis" || s == "heisenberg") return ModelKind::HeisenbergContact;
  throw DomainError("model", "unknown model '" + std::string(s) + "' (expected xy or heis)");
}

int up_spin_count(Channel c) {
  // (X, A, B) with 1 = up
  switch (c) {
    case Channel::NoFlip:
      return 0 + 1 + 1;
    case Channel::FlipB:
      return 1 + 1 + 0;
    case Channel::FlipA:
      return 1 + 0 + 1;
  }
  return -1;
}

DimensionlessPoint to_dimensionless(const PhysicalPoint& p, ModelKind model) {
  if (!(p.k > 0.0) || !std::isfinite(p.k)) {
    throw DomainError("k", "momentum k must be positive and finite");
  }
  if (!(p.d > 0.0) || !std::isfinite(p.d)) {
    throw DomainError("d", "separation d must be positive and finite");
  }
  if (!(p.g_a >= 0.0) || !std::isfinite(p.g_a)) {
    throw DomainError("g_a", "coupling g_a must be finite and non-negative");
  }
  if (!(p.g_b >= 0.0) || !std::isfinite(p.g_b)) {
    throw DomainError("g_b", "coupling g_b must be finite and non-negative");
  }
  return {p.g_a / p.k, p.g_b / p.k, std::numbers::pi * p.k * p.d, model};
}

PhysicalPoint from_dimensionless(const DimensionlessPoint& pt) {
  if (!(pt.phase > 0.0) || !std::isfinite(pt.phase)) {
    throw DomainError("phase", "kd must be positive to recover a physical momentum");
  }
  const double k = pt.phase / std::numbers::pi;
  return {pt.omega_a * k, pt.omega_b * k, k, 1.0};
}

double reduce_phase(double phase) {
  double r = std::fmod(phase, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  // fmod can return pi after the shift for tiny negative inputs
  if (r >= std::numbers::pi) r = 0.0;
  return r;
}

CheckedPoint validate(const DimensionlessPoint& pt) {
  if (!(pt.omega_a >= 0.0) || !std::isfinite(pt.omega_a)) {
    throw DomainError("omega_a", "omega_a must be finite and non-negative");
  }
  if (!(pt.omega_b >= 0.0) || !std::isfinite(pt.omega_b)) {
    throw DomainError("omega_b", "omega_b must be finite and non-negative");
  }
  if (!std::isfinite(pt.phase)) {
    throw DomainError("phase", "phase kd must be finite");
  }
  return {pt, reduce_phase(pt.phase)};
}

cplx AmplitudeSet::transmission(Channel c) const {
  switch (c) {
    case Channel::NoFlip:
      return t_noflip;
    case Channel::FlipB:
      return t_flipb;
    case Channel::FlipA:
      return t_flipa;
  }
  return {};
}

cplx AmplitudeSet::reflection(Channel c) const {
  switch (c) {
    case Channel::NoFlip:
      return r_noflip;
    case Channel::FlipB:
      return r_flipb;
    case Channel::FlipA:
      return r_flipa;
  }
  return {};
}

double AmplitudeSet::flux() const {
  double s = 0.0;
  for (const cplx& z : as_array()) s += std::norm(z);
  return s;
}

double AmplitudeSet::max_deviation(const AmplitudeSet& other) const {
  const auto a = as_array();
  const auto b = other.as_array();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::array<cplx, 6> AmplitudeSet::as_array() const {
  return {t_noflip, r_noflip, t_flipb, r_flipb, t_flipa, r_flipa};
}

}  // namespace qscatter

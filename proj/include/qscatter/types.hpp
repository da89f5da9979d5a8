#pragma once

// Parameter space, spin channels and result containers shared by the whole
// library.
//
// Internally hbar = m = 1 and lengths are measured in units of the qubit
// separation d. A scattering configuration is then fully described by two
// dimensionless couplings Omega = g / k and the phase kd.
//
// Physical units: couplings g in [hbar^2 pi / (m d)], momenta k in
// [pi / d]. In those units Omega = g / k and kd = pi * k exactly.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qscatter {

using cplx = std::complex<double>;

enum class ModelKind {
  SpinExchange,       // g (s+ s- + s- s+) delta(x -+ d/2)
  HeisenbergContact,  // g sigma_X . sigma_site delta(x -+ d/2)
};

std::string_view to_string(ModelKind m);
/// Accepts "xy" / "spin-exchange" and "heis" / "heisenberg".
ModelKind parse_model(std::string_view s);

// Joint spin configurations of (X; A B) with two up spins.
enum class Channel {
  NoFlip = 0,  // X down, AB up-up (incident channel)
  FlipB = 1,   // X up,   AB up-down
  FlipA = 2,   // X up,   AB down-up
};
inline constexpr std::array<Channel, 3> kChannels = {Channel::NoFlip, Channel::FlipB,
                                                     Channel::FlipA};

/// Number of up spins among X, A, B for the channel (always 2).
int up_spin_count(Channel c);

// ---------------------------------------------------------------------------
// Errors

/// Input outside the domain of an operation. `field()` names the offending input.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Operation not defined for the given interaction model.
class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Parameter points

struct DimensionlessPoint {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double phase = 0.0;  // kd in radians
  ModelKind model = ModelKind::SpinExchange;
};

struct PhysicalPoint {
  double g_a = 0.0;  // [hbar^2 pi / (m d)]
  double g_b = 0.0;
  double k = 1.0;    // [pi / d]
  double d = 1.0;    // [d]
};

/// A validated point. `point.phase` keeps the caller's kd (amplitudes carry
/// the propagation phase e^{ikd}); `reduced_phase` is kd mod pi in [0, pi),
/// which is all the observables depend on.
struct CheckedPoint {
  DimensionlessPoint point;
  double reduced_phase = 0.0;

  double omega_a() const { return point.omega_a; }
  double omega_b() const { return point.omega_b; }
  double phase() const { return point.phase; }
  ModelKind model() const { return point.model; }
};

DimensionlessPoint to_dimensionless(const PhysicalPoint& p, ModelKind model);
/// Inverse of to_dimensionless for a chosen momentum unit (d = 1).
PhysicalPoint from_dimensionless(const DimensionlessPoint& pt);

CheckedPoint validate(const DimensionlessPoint& pt);

/// kd reduced to [0, pi).
double reduce_phase(double phase);

// ---------------------------------------------------------------------------
// Result containers

/// Single-scatterer coefficients. t, r, f apply when X and the site have
/// opposite spins; t_same, r_same when they are parallel (1 and 0 for the
/// spin-exchange model, where parallel spins do not interact).
struct SiteCoefficients {
  cplx t{1.0, 0.0};
  cplx r{0.0, 0.0};
  cplx f{0.0, 0.0};
  cplx t_same{1.0, 0.0};
  cplx r_same{0.0, 0.0};
};

/// Two-site transmission/reflection amplitudes for unit incident amplitude
/// in the NoFlip channel.
struct AmplitudeSet {
  cplx t_noflip, r_noflip;
  cplx t_flipb, r_flipb;
  cplx t_flipa, r_flipa;

  cplx transmission(Channel c) const;
  cplx reflection(Channel c) const;
  /// Sum of |T|^2 + |R|^2 over the three channels.
  double flux() const;
  /// Componentwise max |this - other|.
  double max_deviation(const AmplitudeSet& other) const;
  std::array<cplx, 6> as_array() const;
};

struct ObservableSet {
  double concurrence_t = 0.0;
  double probability_t = 0.0;
  double ratio_a_t = 0.0;  // may be +inf
  bool concurrence_t_defined = false;

  double concurrence_r = 0.0;
  double probability_r = 0.0;
  double ratio_a_r = 0.0;
  bool concurrence_r_defined = false;
};

}  // namespace qscatter

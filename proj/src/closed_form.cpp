#include "qscatter/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qscatter {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_omega(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega", "omega must be finite and non-negative");
  }
}

// 1 / (1 - z) for a round-trip factor z; |z| < 1 for any finite coupling.
cplx resolvent(cplx z) {
  if (!(std::abs(z) < 1.0)) {
    throw std::logic_error("bounce factor with |z| >= 1: denominator may vanish");
  }
  return 1.0 / (1.0 - z);
}

AmplitudeSet spin_exchange_amplitudes(const CheckedPoint& pt) {
  const SiteCoefficients a = site_coefficients(pt.omega_a(), ModelKind::SpinExchange);
  const SiteCoefficients b = site_coefficients(pt.omega_b(), ModelKind::SpinExchange);
  const cplx e1 = std::polar(1.0, pt.phase());
  const cplx e2 = e1 * e1;
  const cplx g = resolvent(a.r * b.r * e2);

  AmplitudeSet s;
  s.t_noflip = a.t * b.t * e1 * g;
  s.r_noflip = a.r + a.t * a.t * b.r * e2 * g;
  s.t_flipb = a.t * b.f * e1 * g;
  s.r_flipb = s.t_flipb * e1;
  s.t_flipa = (1.0 + a.t * b.r * e2 * g) * a.f * e1;
  s.r_flipa = s.t_flipa / e1;
  return s;
}

AmplitudeSet heisenberg_amplitudes(const CheckedPoint& pt) {
  const SiteCoefficients a = site_coefficients(pt.omega_a(), ModelKind::HeisenbergContact);
  const SiteCoefficients b = site_coefficients(pt.omega_b(), ModelKind::HeisenbergContact);
  const DressedCoefficients dc = dressed_coefficients(pt);
  const cplx e1 = std::polar(1.0, pt.phase());
  const cplx e2 = e1 * e1;

  // X down between the sites, with flip-and-return excursions folded into
  // the dressed coefficients.
  const cplx g = resolvent(dc.r_a * dc.r_b * e2);
  // X up after flipping at B: bounces off A (parallel) and B (antiparallel).
  const cplx gb = resolvent(a.r_same * b.r * e2);
  // X up after flipping at A: bounces off A (antiparallel) and B (parallel).
  const cplx ga = resolvent(a.r * b.r_same * e2);

  const cplx into_b = dc.t_a * e1 * g;              // right mover arriving at B
  const cplx at_a = 1.0 + dc.t_a * dc.r_b * e2 * g;  // total down-spin weight hitting A

  AmplitudeSet s;
  s.t_noflip = dc.t_a * dc.t_b * e1 * g;
  s.r_noflip = dc.r_a + dc.t_a * dc.t_a * dc.r_b * e2 * g;
  s.t_flipb = into_b * b.f * (1.0 + a.r_same * b.t * e2 * gb);
  s.r_flipb = into_b * b.f * a.t_same * e1 * gb;
  s.t_flipa = at_a * a.f * b.t_same * e1 * ga;
  s.r_flipa = at_a * a.f * (1.0 + a.t * b.r_same * e2 * ga);
  return s;
}

}  // namespace

SiteCoefficients site_coefficients(double omega, ModelKind model) {
  require_omega(omega);
  const double w = omega;
  SiteCoefficients c;
  switch (model) {
    case ModelKind::SpinExchange: {
      const double den = 1.0 + w * w;
      c.t = 1.0 / den;
      c.r = -w * w / den;
      c.f = cplx(0.0, -w / den);
      c.t_same = 1.0;
      c.r_same = 0.0;
      break;
    }
    case ModelKind::HeisenbergContact: {
      const cplx den = (1.0 + kI * w) * (1.0 - 3.0 * kI * w);
      c.t = (1.0 - kI * w) / den;
      c.r = kI * w * (1.0 + 3.0 * kI * w) / den;
      c.f = -2.0 * kI * w / den;
      c.t_same = 1.0 / (1.0 + kI * w);
      c.r_same = -kI * w / (1.0 + kI * w);
      break;
    }
  }
  return c;
}

AmplitudeSet amplitudes(const CheckedPoint& pt) {
  switch (pt.model()) {
    case ModelKind::SpinExchange:
      return spin_exchange_amplitudes(pt);
    case ModelKind::HeisenbergContact:
      return heisenberg_amplitudes(pt);
  }
  throw std::logic_error("unhandled model");
}

DressedCoefficients dressed_coefficients(const CheckedPoint& pt) {
  if (pt.model() != ModelKind::HeisenbergContact) {
    throw UnsupportedModel("dressed coefficients exist only for the Heisenberg contact model");
  }
  const SiteCoefficients a = site_coefficients(pt.omega_a(), ModelKind::HeisenbergContact);
  const SiteCoefficients b = site_coefficients(pt.omega_b(), ModelKind::HeisenbergContact);
  const cplx e2 = std::polar(1.0, 2.0 * pt.phase());

  DressedCoefficients d;
  d.sigma_a = a.f * a.f * b.r_same * e2 * resolvent(a.r * b.r_same * e2);
  d.sigma_b = b.f * b.f * a.r_same * e2 * resolvent(b.r * a.r_same * e2);
  d.t_a = a.t + d.sigma_a;
  d.r_a = a.r + d.sigma_a;
  d.t_b = b.t + d.sigma_b;
  d.r_b = b.r + d.sigma_b;
  return d;
}

TruncatedAmplitudeSet truncated_amplitudes(const CheckedPoint& pt, int n) {
  if (pt.model() != ModelKind::SpinExchange) {
    throw UnsupportedModel("bounce truncation is defined only for the spin-exchange model");
  }
  if (n < 0) throw DomainError("n", "bounce count must be non-negative");

  const SiteCoefficients a = site_coefficients(pt.omega_a(), ModelKind::SpinExchange);
  const SiteCoefficients b = site_coefficients(pt.omega_b(), ModelKind::SpinExchange);
  const cplx e1 = std::polar(1.0, pt.phase());
  const cplx e2 = e1 * e1;
  const cplx z = a.r * b.r * e2;

  // partial[m] = sum_{j<m} z^j
  auto partial = [&](int m) {
    cplx sum = 0.0, term = 1.0;
    for (int j = 0; j < m; ++j) {
      sum += term;
      term *= z;
    }
    return sum;
  };
  const cplx upto_n = partial(n + 1);
  const cplx below_n = partial(n);

  TruncatedAmplitudeSet out;
  out.bounce_order = n;
  AmplitudeSet& s = out.amplitudes;
  s.t_noflip = a.t * b.t * e1 * upto_n;
  s.r_noflip = a.r + a.t * a.t * b.r * e2 * below_n;
  s.t_flipb = a.t * b.f * e1 * upto_n;
  s.r_flipb = s.t_flipb * e1;
  s.t_flipa = (1.0 + a.t * b.r * e2 * below_n) * a.f * e1;
  s.r_flipa = s.t_flipa / e1;
  return out;
}

std::array<double, 6> truncation_error_bounds(const CheckedPoint& pt, int n) {
  if (pt.model() != ModelKind::SpinExchange) {
    throw UnsupportedModel("bounce truncation is defined only for the spin-exchange model");
  }
  if (n < 0) throw DomainError("n", "bounce count must be non-negative");
  const SiteCoefficients a = site_coefficients(pt.omega_a(), ModelKind::SpinExchange);
  const SiteCoefficients b = site_coefficients(pt.omega_b(), ModelKind::SpinExchange);
  const double q = std::abs(a.r * b.r);
  const double tail = 1.0 / (1.0 - q);
  // Series of the form c * sum_j z^j with m kept terms leave |c| q^m / (1 - q).
  const double t_direct = std::abs(a.t * b.t) * std::pow(q, n + 1) * tail;
  const double r_direct = std::abs(a.t * a.t * b.r) * std::pow(q, n) * tail;
  const double flipb = std::abs(a.t * b.f) * std::pow(q, n + 1) * tail;
  const double flipa = std::abs(a.f * a.t * b.r) * std::pow(q, n) * tail;
  return {t_direct, r_direct, flipb, flipb, flipa, flipa};
}

InteractionTime interaction_time_map(double omega) {
  require_omega(omega);
  return {std::atan(omega), 1.0 / (1.0 + omega * omega)};
}

}  // namespace qscatter

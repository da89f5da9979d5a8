#pragma once

// Seeded cross-validation of the closed-form amplitudes against the
// boundary-matching solve, plus unitarity and model-specific identities.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qscatter/types.hpp"

namespace qscatter {

/// Reproducible random parameter points: omega in [0, 20] (a mix of exact
/// zeros, uniform and log-uniform draws), phase uniform in [0, pi).
std::vector<DimensionlessPoint> sample_points(std::size_t n, std::uint64_t seed, ModelKind model);

/// Geometric series f^2 r'_other z sum_{j<terms} (r r'_other z)^j for the
/// bounce self-energy of one Heisenberg site, summed term by term.
cplx sigma_by_series(double omega_self, double omega_other, double phase, int terms);

using AmplitudeFunction = std::function<AmplitudeSet(const CheckedPoint&)>;

struct VerifyOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::vector<ModelKind> models = {ModelKind::SpinExchange, ModelKind::HeisenbergContact};
  double tolerance = 1e-10;
  /// The closed-form route under test. Replaceable so that a deliberately
  /// broken implementation can be shown to fail.
  AmplitudeFunction closed_form;
};

struct CheckResult {
  std::string name;
  ModelKind model = ModelKind::SpinExchange;
  double max_deviation = 0.0;
  DimensionlessPoint worst{};
  bool passed = true;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerifyReport run_verification(const VerifyOptions& opts);
void print_report(std::ostream& os, const VerifyReport& rep, double tolerance);

}  // namespace qscatter

#pragma once

// Independent numerical route to the scattering amplitudes.
//
// The three coupled channel wave functions are written piecewise as plane
// waves and the matching conditions at the two delta sites (continuity plus
// derivative jump u'(x0+) - u'(x0-) = 2 k Omega M u(x0), with M the spin
// coupling matrix projected onto the open channels) are assembled into a
// 12x12 complex linear system and solved densely. Nothing here uses the
// closed-form expressions.

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

#include "qscatter/types.hpp"

namespace qscatter::oracle {

using Matrix3c = Eigen::Matrix<cplx, 3, 3>;
using Matrix12c = Eigen::Matrix<cplx, 12, 12>;
using Vector12c = Eigen::Matrix<cplx, 12, 1>;

/// Per-channel unknowns, in column order within a channel block.
enum class Coefficient { R = 0, MidRight = 1, MidLeft = 2, T = 3 };

/// Column index of (channel, coefficient) in the unknown vector.
constexpr int unknown_index(Channel c, Coefficient k) {
  return 4 * static_cast<int>(c) + static_cast<int>(k);
}

enum class Site { A, B };

/// Spin-coupling operator of the site, restricted to the (NoFlip, FlipB,
/// FlipA) subspace. Built from explicit 8x8 Pauli algebra on X (x) A (x) B.
Matrix3c coupling_matrix(ModelKind model, Site site);

struct MatchingSystem {
  Matrix12c matrix;
  Vector12c rhs;
  std::array<std::string, 12> unknown_labels;
};

MatchingSystem build_matching_system(const CheckedPoint& pt);

struct MatchingSolution {
  Vector12c unknowns;
  double residual = 0.0;     // ||M x - b||_inf
  double rcond = 0.0;        // reciprocal condition estimate
  AmplitudeSet amplitudes;
};

/// Raised when the matching matrix is singular or badly conditioned.
class NumericError : public std::runtime_error {
 public:
  NumericError(const DimensionlessPoint& pt, const std::string& what);
  const DimensionlessPoint& point() const noexcept { return point_; }

 private:
  DimensionlessPoint point_;
};

MatchingSolution solve_matching_system(const CheckedPoint& pt);

inline AmplitudeSet solve_amplitudes_numeric(const CheckedPoint& pt) {
  return solve_matching_system(pt).amplitudes;
}
inline AmplitudeSet solve_amplitudes_numeric(const DimensionlessPoint& pt) {
  return solve_amplitudes_numeric(validate(pt));
}

/// Wave function values of one channel just left and just right of a site,
/// reconstructed from a solution.
struct SiteValues {
  cplx left;
  cplx right;
};
SiteValues wave_at_site(const CheckedPoint& pt, const MatchingSolution& sol, Channel c, Site s);

}  // namespace qscatter::oracle

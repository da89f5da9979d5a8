#include "qscatter/oracle.hpp"

#include <cmath>
#include <sstream>

namespace qscatter::oracle {
namespace {

using Matrix2c = Eigen::Matrix<cplx, 2, 2>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;

constexpr cplx kI{0.0, 1.0};

// Single-spin basis: index 0 = up, 1 = down.
Matrix2c pauli(char which) {
  Matrix2c m = Matrix2c::Zero();
  switch (which) {
    case 'x':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'y':
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 'z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case '+':  // |up><down|
      m(0, 1) = 1.0;
      break;
    case '-':
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

Matrix8c kron3(const Matrix2c& x, const Matrix2c& a, const Matrix2c& b) {
  Matrix8c out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      out(i, j) = x(i >> 2, j >> 2) * a((i >> 1) & 1, (j >> 1) & 1) * b(i & 1, j & 1);
    }
  }
  return out;
}

// Operator op_X (x) op_site acting on X and the chosen site, identity elsewhere.
Matrix8c pair_operator(const Matrix2c& on_x, const Matrix2c& on_site, Site site) {
  const Matrix2c id = Matrix2c::Identity();
  return site == Site::A ? kron3(on_x, on_site, id) : kron3(on_x, id, on_site);
}

// Basis index of each open channel in the |X A B> product basis.
int basis_index(Channel c) {
  constexpr int up = 0, down = 1;
  auto idx = [](int x, int a, int b) { return 4 * x + 2 * a + b; };
  switch (c) {
    case Channel::NoFlip:
      return idx(down, up, up);
    case Channel::FlipB:
      return idx(up, up, down);
    case Channel::FlipA:
      return idx(up, down, up);
  }
  return -1;
}

const char* coefficient_name(int k) {
  static constexpr const char* names[] = {"R", "A+", "A-", "T"};
  return names[k];
}

const char* channel_name(int c) {
  static constexpr const char* names[] = {"down;upup", "up;updown", "up;downup"};
  return names[c];
}

}  // namespace

Matrix3c coupling_matrix(ModelKind model, Site site) {
  Matrix8c op;
  switch (model) {
    case ModelKind::SpinExchange:
      op = pair_operator(pauli('+'), pauli('-'), site) + pair_operator(pauli('-'), pauli('+'), site);
      break;
    case ModelKind::HeisenbergContact:
      op = pair_operator(pauli('x'), pauli('x'), site) + pair_operator(pauli('y'), pauli('y'), site) +
           pair_operator(pauli('z'), pauli('z'), site);
      break;
  }
  Matrix3c m;
  for (Channel ci : kChannels) {
    for (Channel cj : kChannels) {
      m(static_cast<int>(ci), static_cast<int>(cj)) = op(basis_index(ci), basis_index(cj));
    }
  }
  return m;
}

MatchingSystem build_matching_system(const CheckedPoint& pt) {
  MatchingSystem sys;
  sys.matrix.setZero();
  sys.rhs.setZero();
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < 4; ++k) {
      sys.unknown_labels[4 * c + k] = std::string(coefficient_name(k)) + "[" + channel_name(c) + "]";
    }
  }

  // Dimensionless coordinate y = k x; sites at y = -kd/2 and +kd/2.
  const double half = 0.5 * pt.phase();
  const Matrix3c ma = coupling_matrix(pt.model(), Site::A);
  const Matrix3c mb = coupling_matrix(pt.model(), Site::B);
  const double ja = 2.0 * pt.omega_a();
  const double jb = 2.0 * pt.omega_b();

  // Incident amplitudes: unit flux in NoFlip only.
  const std::array<cplx, 3> incident = {1.0, 0.0, 0.0};

  auto col = [](int c, Coefficient k) { return unknown_index(static_cast<Channel>(c), k); };

  // Site A. Left: I e^{i(y+kd/2)} + R e^{-i(y+kd/2)}, so value I + R and
  // slope i(I - R) at the site. Middle: P e^{iy} + Q e^{-iy}.
  const cplx ea = std::polar(1.0, -half);
  for (int c = 0; c < 3; ++c) {
    const int cont = c;
    const int jump = 3 + c;
    // continuity: P ea + Q/ea - R = I
    sys.matrix(cont, col(c, Coefficient::MidRight)) = ea;
    sys.matrix(cont, col(c, Coefficient::MidLeft)) = 1.0 / ea;
    sys.matrix(cont, col(c, Coefficient::R)) = -1.0;
    sys.rhs(cont) = incident[c];
    // jump: i(P ea - Q/ea) - i(I - R) - ja sum_c' M(c,c') (I + R)_c' = 0
    sys.matrix(jump, col(c, Coefficient::MidRight)) = kI * ea;
    sys.matrix(jump, col(c, Coefficient::MidLeft)) = -kI / ea;
    sys.matrix(jump, col(c, Coefficient::R)) += kI;
    cplx rhs = kI * incident[c];
    for (int cp = 0; cp < 3; ++cp) {
      sys.matrix(jump, col(cp, Coefficient::R)) -= ja * ma(c, cp);
      rhs += ja * ma(c, cp) * incident[cp];
    }
    sys.rhs(jump) = rhs;
  }

  // Site B. Right: T e^{i(y - kd/2)}, value T and slope iT at the site.
  const cplx eb = std::polar(1.0, half);
  for (int c = 0; c < 3; ++c) {
    const int cont = 6 + c;
    const int jump = 9 + c;
    sys.matrix(cont, col(c, Coefficient::T)) = 1.0;
    sys.matrix(cont, col(c, Coefficient::MidRight)) = -eb;
    sys.matrix(cont, col(c, Coefficient::MidLeft)) = -1.0 / eb;
    sys.matrix(jump, col(c, Coefficient::T)) += kI;
    sys.matrix(jump, col(c, Coefficient::MidRight)) = -kI * eb;
    sys.matrix(jump, col(c, Coefficient::MidLeft)) = kI / eb;
    for (int cp = 0; cp < 3; ++cp) {
      sys.matrix(jump, col(cp, Coefficient::T)) -= jb * mb(c, cp);
    }
  }
  return sys;
}

NumericError::NumericError(const DimensionlessPoint& pt, const std::string& what)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << what << " at (omega_a=" << pt.omega_a << ", omega_b=" << pt.omega_b
           << ", phase=" << pt.phase << ", model=" << to_string(pt.model) << ")";
        return os.str();
      }()),
      point_(pt) {}

MatchingSolution solve_matching_system(const CheckedPoint& pt) {
  const MatchingSystem sys = build_matching_system(pt);
  const Eigen::PartialPivLU<Matrix12c> lu(sys.matrix);

  MatchingSolution sol;
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-12)) {
    throw NumericError(pt.point, "matching matrix singular or ill-conditioned (rcond=" +
                                     std::to_string(sol.rcond) + ")");
  }
  sol.unknowns = lu.solve(sys.rhs);
  sol.residual = (sys.matrix * sol.unknowns - sys.rhs).cwiseAbs().maxCoeff();
  if (!(sol.residual < 1e-10)) {
    throw NumericError(pt.point, "matching solve residual too large (" + std::to_string(sol.residual) + ")");
  }

  auto get = [&](Channel c, Coefficient k) { return sol.unknowns(unknown_index(c, k)); };
  AmplitudeSet& a = sol.amplitudes;
  a.t_noflip = get(Channel::NoFlip, Coefficient::T);
  a.r_noflip = get(Channel::NoFlip, Coefficient::R);
  a.t_flipb = get(Channel::FlipB, Coefficient::T);
  a.r_flipb = get(Channel::FlipB, Coefficient::R);
  a.t_flipa = get(Channel::FlipA, Coefficient::T);
  a.r_flipa = get(Channel::FlipA, Coefficient::R);
  return sol;
}

SiteValues wave_at_site(const CheckedPoint& pt, const MatchingSolution& sol, Channel c, Site s) {
  auto get = [&](Coefficient k) { return sol.unknowns(unknown_index(c, k)); };
  const double half = 0.5 * pt.phase();
  const cplx incident = c == Channel::NoFlip ? 1.0 : 0.0;
  if (s == Site::A) {
    const cplx ea = std::polar(1.0, -half);
    return {incident + get(Coefficient::R), get(Coefficient::MidRight) * ea + get(Coefficient::MidLeft) / ea};
  }
  const cplx eb = std::polar(1.0, half);
  return {get(Coefficient::MidRight) * eb + get(Coefficient::MidLeft) / eb, get(Coefficient::T)};
}

}  // namespace qscatter::oracle

#include "nvmix/frame_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nvmix/units.hpp"

namespace nvmix {

Eigen::Matrix3d rotation_matrix(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix3d u;
  u << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return u;
}

StaticFrame static_frame(const FieldVector& omega_dc, const PhysicalConstants& c) {
  c.validate();
  if (!omega_dc.finite()) throw std::invalid_argument("static field must be finite");
  if (omega_dc.y != 0.0) throw std::invalid_argument("static field must lie in the xz plane");

  StaticFrame f;
  const double zd = omega_dc.zd(c);
  f.omega_H = kSqrt2 * omega_dc.x;
  if (f.omega_H == 0.0 && zd == 0.0)
    throw std::invalid_argument("rotation angle undefined at exact degeneracy without transverse field");

  f.omega_R0 = std::hypot(zd, f.omega_H);
  f.theta = std::atan2(f.omega_H, zd);
  if (f.omega_H != 0.0) {
    f.eta = zd / f.omega_H;
  } else {
    f.eta = std::copysign(std::numeric_limits<double>::infinity(), zd);
  }
  f.omega_dch = 0.5 * (c.omega_D + 3.0 * omega_dc.z);
  f.omega_E = c.omega_E;
  f.U.m = rotation_matrix(f.theta).cast<cplx>();
  f.U.basis = Basis::gslac;
  return f;
}

TripletMatrix to_rotated_frame(const TripletMatrix& h, const StaticFrame& frame) {
  TripletMatrix out;
  out.m = frame.U.m.adjoint() * h.m * frame.U.m;
  out.basis = Basis::rotated;
  return out;
}

TripletMatrix rotated_static_hamiltonian(const StaticFrame& frame) {
  const double zd = frame.omega_R0 * std::cos(frame.theta);
  TripletMatrix h;
  h.basis = Basis::gslac;
  h.m << -0.5 * zd, -0.5 * frame.omega_H, frame.omega_E,
         -0.5 * frame.omega_H, 0.5 * zd, -0.5 * frame.omega_H,
         frame.omega_E, -0.5 * frame.omega_H, frame.omega_dch;
  return to_rotated_frame(h, frame);
}

double level3_residual(const StaticFrame& frame) {
  const auto h = rotated_static_hamiltonian(frame);
  return std::max(std::abs(h(0, 2)), std::abs(h(1, 2)));
}

TripletMatrix TransformedDrive::matrix() const {
  TripletMatrix t;
  t.basis = Basis::rotated;
  t.m << -omega_TL, omega_TT, third_level_couplings[0],
         std::conj(omega_TT), omega_TL, third_level_couplings[1],
         std::conj(third_level_couplings[0]), std::conj(third_level_couplings[1]), 0.0;
  return t;
}

TransformedDrive transform_transverse_drive(cplx omega_T, const StaticFrame& frame) {
  const double half = 0.5 * frame.theta;
  const double s = std::sin(half);
  const double c = std::cos(half);
  const cplx wc = std::conj(omega_T);

  TransformedDrive d;
  d.omega_T = omega_T;
  d.omega_TL = std::pow(2.0, -1.5) * (omega_T + wc).real() * std::sin(frame.theta);
  d.omega_TT = (omega_T * (s * s) - wc * (c * c)) / kSqrt2;
  d.third_level_couplings = {-wc * s / kSqrt2, -wc * c / kSqrt2};
  return d;
}

TripletMatrix transform_longitudinal_drive(double omega_acz, const StaticFrame& frame) {
  const double c = std::cos(frame.theta);
  const double s = std::sin(frame.theta);
  TripletMatrix t;
  t.basis = Basis::rotated;
  t.m << -c, s, 0,
         s, c, 0,
         0, 0, 3;
  t.m *= 0.5 * omega_acz;
  return t;
}

namespace {

double max_dev(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

IdentityReport verify_conjugation_identities(double theta) {
  const Eigen::Matrix3cd u = rotation_matrix(theta).cast<cplx>();
  const Eigen::Matrix3cd ui = u.adjoint();
  const double C = std::cos(theta);
  const double S = std::sin(theta);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);

  IdentityReport r;
  Eigen::Matrix3cd lhs, rhs;

  lhs << -C, -S, 0, -S, C, 0, 0, 0, 1;
  rhs << -1, 0, 0, 0, 1, 0, 0, 0, 1;
  r.per_identity[0] = max_dev(ui * lhs * u, rhs);

  lhs << -1, 0, 0, 0, 1, 0, 0, 0, 0;
  rhs << -C, S, 0, S, C, 0, 0, 0, 0;
  r.per_identity[1] = max_dev(ui * lhs * u, rhs);

  lhs << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  rhs << S, C, 0, C, -S, 0, 0, 0, 0;
  r.per_identity[2] = max_dev(ui * lhs * u, rhs);

  lhs << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  rhs << 0, 0, c, 0, 0, -s, c, -s, 0;
  r.per_identity[3] = max_dev(ui * lhs * u, rhs);

  lhs << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  rhs << 0, 0, s, 0, 0, c, s, c, 0;
  r.per_identity[4] = max_dev(ui * lhs * u, rhs);

  // The last relation is linear in x + iy; checking the two real generators
  // x = 1 and y = 1 covers every complex coupling.
  double worst = 0.0;
  for (const cplx z : {cplx(1, 0), cplx(0, 1)}) {
    const double x = z.real();
    const double y = z.imag();
    const cplx zc = std::conj(z);
    lhs << 0, z, 0, zc, 0, z, 0, zc, 0;
    rhs << x * S, x * C + cplx(0, y), z * s,
           x * C - cplx(0, y), -x * S, z * c,
           zc * s, zc * c, 0;
    worst = std::max(worst, max_dev(ui * lhs * u, rhs));
  }
  r.per_identity[5] = worst;

  r.max_error = *std::max_element(r.per_identity.begin(), r.per_identity.end());
  return r;
}

}  // namespace nvmix

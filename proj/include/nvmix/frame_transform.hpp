#pragma once

#include <array>
#include <complex>

#include "nvmix/spin_core.hpp"

namespace nvmix {

/// Result of the approximate diagonalization of the static Hamiltonian near
/// the anti-crossing.
///
/// theta is chosen so that cos(theta) = zd / omega_R0 and
/// sin(theta) = omega_H / omega_R0. For omega_H > 0 this is the branch
/// theta in (0, pi) with sin(theta) = 1 / sqrt(1 + eta^2).
struct StaticFrame {
  double theta = 0.0;
  double eta = 0.0;        // cot(theta) = zd / omega_H, +-inf when omega_H = 0
  double omega_R0 = 0.0;   // sqrt(zd^2 + omega_H^2)
  double omega_H = 0.0;    // sqrt(2) omega_dc,x
  double omega_dch = 0.0;  // (omega_D + 3 omega_dc,z) / 2
  double omega_E = 0.0;
  TripletMatrix U;         // rotation through theta/2 in the (1,2) block

  /// Diagonal of U^-1 H_dc U: (-omega_R0/2, omega_R0/2, omega_dch).
  std::array<double, 3> diagonal() const { return {-0.5 * omega_R0, 0.5 * omega_R0, omega_dch}; }
};

/// U(theta/2) = [[cos, -sin, 0], [sin, cos, 0], [0, 0, 1]] of theta/2.
Eigen::Matrix3d rotation_matrix(double theta);

/// Throws std::invalid_argument for omega_dc.y != 0, for omega_H = zd = 0,
/// or for invalid constants.
StaticFrame static_frame(const FieldVector& omega_dc, const PhysicalConstants& c);

/// U^-1 h U.
TripletMatrix to_rotated_frame(const TripletMatrix& h, const StaticFrame& frame);

/// Static Hamiltonian in the anti-crossing representation, rotated.
TripletMatrix rotated_static_hamiltonian(const StaticFrame& frame);

/// Largest magnitude among the couplings to level 3 left after the rotation
/// (the omega_E and omega_H residuals), in rad/s.
double level3_residual(const StaticFrame& frame);

/// Transverse drive omega_T = omega_ac,x + i omega_ac,y seen in the rotated frame.
struct TransformedDrive {
  double omega_TL = 0.0;
  cplx omega_TT;
  cplx omega_T;
  /// (1,3) and (2,3) entries: -omega_T* sin(theta/2)/sqrt2, -omega_T* cos(theta/2)/sqrt2.
  std::array<cplx, 2> third_level_couplings;

  TripletMatrix matrix() const;
};

TransformedDrive transform_transverse_drive(cplx omega_T, const StaticFrame& frame);

/// (omega_acz / 2) [[-cos, sin, 0], [sin, cos, 0], [0, 0, 3]] of theta.
TripletMatrix transform_longitudinal_drive(double omega_acz, const StaticFrame& frame);

struct IdentityReport {
  /// Deviation of the diagonalizing relation followed by the five drive
  /// relations, in the order they are stated.
  std::array<double, 6> per_identity{};
  double max_error = 0.0;
};

/// Conjugates the basis matrices by U(theta/2) and compares with their
/// closed forms; returns the largest absolute entrywise deviation.
IdentityReport verify_conjugation_identities(double theta);

}  // namespace nvmix

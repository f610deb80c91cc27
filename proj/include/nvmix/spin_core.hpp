#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nvmix {

using cplx = std::complex<double>;

/// Material constants of the NV ground-state triplet, all in rad/s.
struct PhysicalConstants {
  double omega_D;  // zero-field splitting
  double gamma_e;  // gyromagnetic ratio, rad/s per tesla
  double omega_E;  // strain splitting

  /// omega_D = 2pi 2.87 GHz, gamma_e = 2pi 28.03 GHz/T, omega_E = 0.
  static PhysicalConstants nv_defaults();

  /// Throws std::invalid_argument unless omega_D > 0, gamma_e > 0 and
  /// 0 <= omega_E < omega_D / 10.
  void validate() const;
};

/// Magnetic field expressed as the angular frequency vector gamma_e * B.
struct FieldVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static FieldVector from_tesla(double b, const Eigen::Vector3d& direction,
                                const PhysicalConstants& c);

  bool finite() const;

  /// Detuning from the anti-crossing, omega_z - omega_D.
  double zd(const PhysicalConstants& c) const { return z - c.omega_D; }
  /// Transverse coupling -sqrt(2) (omega_x - i omega_y).
  cplx delta() const;
  /// Third diagonal entry of the shifted representation, (omega_D + 3 omega_z) / 2.
  double h(const PhysicalConstants& c) const;

  FieldVector operator+(const FieldVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
};

enum class Basis {
  ms,       // m_S = (+1, 0, -1)
  gslac,    // crossing pair in slots 1 and 2, remaining level in slot 3
  rotated,  // after the static-frame rotation
};

struct TripletMatrix {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  Basis basis = Basis::ms;

  cplx operator()(int r, int c) const { return m(r, c); }
  bool is_hermitian(double rel_tol = 1e-12) const;
};

struct SpinOperators {
  TripletMatrix sx;
  TripletMatrix sy;
  TripletMatrix sz;
};

/// Spin-1 matrices S/hbar in the m_S = (+1, 0, -1) basis.
SpinOperators spin1_operators();

/// hbar^-1 H = omega_D Sz^2 + (omega_E / 2)(S+^2 + S-^2) - omega . S in the m_S basis.
TripletMatrix build_hamiltonian(const FieldVector& field, const PhysicalConstants& c);

/// Reorders an m_S-basis matrix into the anti-crossing basis. With the
/// (+1, 0, -1) ordering the crossing levels already sit in slots 1 and 2,
/// so the permutation is the identity and only the basis tag changes.
TripletMatrix to_gslac_basis(const TripletMatrix& h);

/// The anti-crossing form: diagonal (-zd/2, zd/2, h), couplings delta/2 and
/// omega_E. Equals to_gslac_basis(build_hamiltonian(field)) + (zd/2) I.
TripletMatrix gslac_representation(const FieldVector& field, const PhysicalConstants& c);

/// Ascending eigenvalues of a Hermitian matrix.
std::array<double, 3> sorted_eigenvalues(const TripletMatrix& h);

struct LevelPoint {
  double b;                         // tesla
  std::array<double, 3> energies;   // rad/s, ascending
};

/// Exact eigen-levels of build_hamiltonian(gamma_e B direction) for each B.
/// Throws std::invalid_argument if |direction| differs from 1 by more than
/// 1e-12 or any B is not finite.
std::vector<LevelPoint> eigen_levels(std::span<const double> b_values,
                                     const Eigen::Vector3d& direction,
                                     const PhysicalConstants& c);

}  // namespace nvmix

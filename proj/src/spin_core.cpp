#include "nvmix/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvmix/units.hpp"

namespace nvmix {

PhysicalConstants PhysicalConstants::nv_defaults() {
  return {ghz(2.87), ghz(28.03), 0.0};
}

void PhysicalConstants::validate() const {
  if (!(std::isfinite(omega_D) && omega_D > 0.0))
    throw std::invalid_argument("omega_D must be positive");
  if (!(std::isfinite(gamma_e) && gamma_e > 0.0))
    throw std::invalid_argument("gamma_e must be positive");
  if (!(std::isfinite(omega_E) && omega_E >= 0.0 && omega_E < omega_D / 10.0))
    throw std::invalid_argument("omega_E must satisfy 0 <= omega_E < omega_D/10");
}

FieldVector FieldVector::from_tesla(double b, const Eigen::Vector3d& direction,
                                    const PhysicalConstants& c) {
  const double w = c.gamma_e * b;
  return {w * direction.x(), w * direction.y(), w * direction.z()};
}

bool FieldVector::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

cplx FieldVector::delta() const { return -kSqrt2 * cplx(x, -y); }

double FieldVector::h(const PhysicalConstants& c) const {
  return 0.5 * (c.omega_D + 3.0 * z);
}

bool TripletMatrix::is_hermitian(double rel_tol) const {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

SpinOperators spin1_operators() {
  const double r = 1.0 / kSqrt2;
  const cplx i(0.0, 1.0);
  SpinOperators s;
  s.sx.m << 0, r, 0,
            r, 0, r,
            0, r, 0;
  s.sy.m << 0, -i * r, 0,
            i * r, 0, -i * r,
            0, i * r, 0;
  s.sz.m << 1, 0, 0,
            0, 0, 0,
            0, 0, -1;
  return s;
}

TripletMatrix build_hamiltonian(const FieldVector& field, const PhysicalConstants& c) {
  c.validate();
  if (!field.finite()) throw std::invalid_argument("field components must be finite");

  const SpinOperators s = spin1_operators();
  const Eigen::Matrix3cd sp = s.sx.m + cplx(0, 1) * s.sy.m;
  const Eigen::Matrix3cd sm = s.sx.m - cplx(0, 1) * s.sy.m;

  TripletMatrix h;
  h.m = c.omega_D * s.sz.m * s.sz.m + 0.5 * c.omega_E * (sp * sp + sm * sm) -
        (field.x * s.sx.m + field.y * s.sy.m + field.z * s.sz.m);
  return h;
}

TripletMatrix to_gslac_basis(const TripletMatrix& h) {
  // slot -> m_S index
  static constexpr std::array<int, 3> kOrder = {0, 1, 2};
  TripletMatrix out;
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col) out.m(r, col) = h.m(kOrder[r], kOrder[col]);
  out.basis = Basis::gslac;
  return out;
}

TripletMatrix gslac_representation(const FieldVector& field, const PhysicalConstants& c) {
  c.validate();
  if (!field.finite()) throw std::invalid_argument("field components must be finite");

  const double zd = field.zd(c);
  const cplx half_delta = 0.5 * field.delta();
  TripletMatrix h;
  h.basis = Basis::gslac;
  h.m << -0.5 * zd, half_delta, c.omega_E,
         std::conj(half_delta), 0.5 * zd, half_delta,
         c.omega_E, std::conj(half_delta), field.h(c);
  return h;
}

std::array<double, 3> sorted_eigenvalues(const TripletMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h.m, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = solver.eigenvalues();
  std::array<double, 3> out = {ev(0), ev(1), ev(2)};
  std::stable_sort(out.begin(), out.end());
  return out;
}

std::vector<LevelPoint> eigen_levels(std::span<const double> b_values,
                                     const Eigen::Vector3d& direction,
                                     const PhysicalConstants& c) {
  c.validate();
  if (!direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("direction must be a unit vector");

  std::vector<LevelPoint> out;
  out.reserve(b_values.size());
  for (double b : b_values) {
    if (!std::isfinite(b)) throw std::invalid_argument("field values must be finite");
    const auto h = build_hamiltonian(FieldVector::from_tesla(b, direction, c), c);
    out.push_back({b, sorted_eigenvalues(h)});
  }
  return out;
}

}  // namespace nvmix

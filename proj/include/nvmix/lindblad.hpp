#pragma once

#include <functional>

#include <Eigen/Dense>

#include "nvmix/rwa.hpp"

namespace nvmix {

/// N x N density matrix, N = 2 or 3. Level 1 is the lower level.
struct DensityMatrix {
  Eigen::MatrixXcd rho;

  /// Diagonal state with the given populations.
  static DensityMatrix from_populations(const Eigen::VectorXd& populations);
  /// Two-level state with rho_11 - rho_22 = polarization.
  static DensityMatrix polarized(double polarization);

  int dim() const { return static_cast<int>(rho.rows()); }
  double trace() const { return rho.trace().real(); }
  double polarization() const { return (rho(0, 0) - rho(1, 1)).real(); }
  double min_eigenvalue() const;

  /// Physical density matrix within tol.
  bool is_physical(double tol = 1e-10) const;
};

using HamiltonianSource = std::function<Eigen::MatrixXcd(double t)>;

/// Whether gamma2 is the total coherence decay rate or the pure-dephasing
/// rate added on top of gamma1 / 2.
enum class DephasingConvention { total, pure };

/// Populations relax toward `equilibrium` at gamma1; coherences decay at
/// gamma2 (total) or gamma2 + gamma1/2 (pure).
struct Dissipator {
  RelaxationRates rates;
  Eigen::VectorXd equilibrium;
  DephasingConvention convention = DephasingConvention::total;

  double coherence_rate() const;
};

struct EvolveOptions {
  double tolerance = 1e-9;   // local error per step, absolute on rho entries
  double min_step = 1e-22;   // seconds; smaller steps are a stiffness failure
  bool check_physical = true;
  double physical_tolerance = 1e-9;
};

/// Integrates the master equation from t = 0 to t_final with an adaptive
/// Dormand-Prince 5(4) scheme. Throws NumericalError on step-size underflow
/// or when a trajectory leaves the physical state space.
DensityMatrix evolve(const HamiltonianSource& hamiltonian, const Dissipator& dissipator,
                     const DensityMatrix& rho0, double t_final, double dt_max,
                     const EvolveOptions& options = {});

struct SteadyStateResult {
  double P0 = 0.0;     // cycle-averaged polarization with drive
  double Ps = 0.0;     // polarization without drive
  double P_emp = 0.0;  // 1 - P0 / Ps
  long windows = 0;    // averaging windows integrated
};

enum class TransverseForm {
  linear,    // 2 Omega_T1 cos(Omega_T t), includes the counter-rotating part
  rotating,  // Omega_T1 exp(i Omega_T t) only
};

struct SteadyStateOptions {
  double tolerance = 1e-6;   // drift of the window average between windows
  long max_windows = 400000;
  /// Consecutive quiet time required, in units of 1 / min(gamma1, gamma2).
  double settle_lifetimes = 2.0;
  TransverseForm transverse = TransverseForm::linear;
  DephasingConvention convention = DephasingConvention::total;
  EvolveOptions evolve;
};

/// Lab-frame two-level Hamiltonian of a decomposition:
/// diag(-D/2, D/2) with D = Omega_0 - Omega_L1 cos(Omega_L t), plus the
/// transverse coupling.
HamiltonianSource two_level_hamiltonian(const DriveDecomposition& d, TransverseForm form);

/// Time-domain steady state of the driven two-level system. Averages the
/// polarization over windows of one longitudinal period (one transverse
/// period when Omega_L1 = 0). Throws NumericalError when the average has not
/// settled after max_windows.
SteadyStateResult steady_state_polarization(const DriveDecomposition& d,
                                            const RelaxationRates& rates,
                                            double equilibrium_polarization = 1.0,
                                            const SteadyStateOptions& options = {});

}  // namespace nvmix

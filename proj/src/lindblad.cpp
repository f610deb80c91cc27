#include "nvmix/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nvmix/errors.hpp"
#include "nvmix/units.hpp"

namespace nvmix {

DensityMatrix DensityMatrix::from_populations(const Eigen::VectorXd& populations) {
  DensityMatrix d;
  d.rho = populations.cast<cplx>().asDiagonal();
  return d;
}

DensityMatrix DensityMatrix::polarized(double polarization) {
  return from_populations(Eigen::Vector2d(0.5 * (1.0 + polarization), 0.5 * (1.0 - polarization)));
}

double DensityMatrix::min_eigenvalue() const {
  if (dim() == 2) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double b = std::abs(rho(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double tol) const {
  if (rho.rows() != rho.cols() || rho.rows() < 2) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(trace() - 1.0) > tol) return false;
  return min_eigenvalue() >= -tol;
}

double Dissipator::coherence_rate() const {
  return convention == DephasingConvention::total ? rates.gamma2
                                                  : rates.gamma2 + 0.5 * rates.gamma1;
}

namespace {

// d rho / dt for the master equation.
Eigen::MatrixXcd generator(const Eigen::MatrixXcd& h, const Dissipator& diss,
                           double coherence, const Eigen::MatrixXcd& rho) {
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd out = -i * (h * rho - rho * h);
  const int n = static_cast<int>(rho.rows());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == c) {
        out(r, r) -= diss.rates.gamma1 * (rho(r, r) - diss.equilibrium(r));
      } else {
        out(r, c) -= coherence * rho(r, c);
      }
    }
  }
  return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Adaptive integrator over a single interval. Carries the step size and the
// integral of the polarization between calls.
class Propagator {
 public:
  Propagator(const HamiltonianSource& h, const Dissipator& diss, double dt_max,
             const EvolveOptions& opt)
      : h_(h), diss_(diss), coherence_(diss.coherence_rate()), dt_max_(dt_max), opt_(opt),
        step_(dt_max) {}

  // Advances rho from t0 to t1, returns the integral of rho_11 - rho_22 over the interval.
  double advance(Eigen::MatrixXcd& rho, double t0, double t1) {
    double t = t0;
    double integral = 0.0;
    Eigen::MatrixXcd k1 = rhs(t, rho);
    while (t < t1) {
      double h = std::min({step_, dt_max_, t1 - t});
      const bool last = (h == t1 - t);
      for (;;) {
        if (h < opt_.min_step)
          throw NumericalError("step size underflow at t = " + std::to_string(t) +
                               " s (stiff system)");
        const Eigen::MatrixXcd y2 = rho + h * (a21 * k1);
        const Eigen::MatrixXcd k2 = rhs(t + c2 * h, y2);
        const Eigen::MatrixXcd y3 = rho + h * (a31 * k1 + a32 * k2);
        const Eigen::MatrixXcd k3 = rhs(t + c3 * h, y3);
        const Eigen::MatrixXcd y4 = rho + h * (a41 * k1 + a42 * k2 + a43 * k3);
        const Eigen::MatrixXcd k4 = rhs(t + c4 * h, y4);
        const Eigen::MatrixXcd y5 = rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        const Eigen::MatrixXcd k5 = rhs(t + c5 * h, y5);
        const Eigen::MatrixXcd y6 =
            rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        const Eigen::MatrixXcd k6 = rhs(t + h, y6);
        const Eigen::MatrixXcd next =
            rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::MatrixXcd k7 = rhs(t + h, next);
        const double err =
            (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).cwiseAbs().maxCoeff();

        if (err <= opt_.tolerance) {
          // The running integral of rho_11 - rho_22 is integrated as an
          // extra state component with the same stages.
          integral += h * (b1 * pol(rho) + b3 * pol(y3) + b4 * pol(y4) + b5 * pol(y5) +
                           b6 * pol(y6));
          rho = next;
          t = last ? t1 : t + h;
          k1 = k7;
          if (opt_.check_physical) check(rho, t);
          const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(opt_.tolerance / err, 0.2), 0.2, 5.0);
          if (!last || grow < 1.0) step_ = h * grow;
          break;
        }
        h *= std::clamp(0.9 * std::pow(opt_.tolerance / err, 0.2), 0.1, 0.9);
      }
    }
    return integral;
  }

 private:
  Eigen::MatrixXcd rhs(double t, const Eigen::MatrixXcd& rho) const {
    return generator(h_(t), diss_, coherence_, rho);
  }

  static double pol(const Eigen::MatrixXcd& rho) { return (rho(0, 0) - rho(1, 1)).real(); }

  void check(const Eigen::MatrixXcd& rho, double t) const {
    DensityMatrix d{rho};
    if (!d.is_physical(opt_.physical_tolerance))
      throw NumericalError("density matrix left the physical state space at t = " +
                           std::to_string(t) + " s");
  }

  const HamiltonianSource& h_;
  const Dissipator& diss_;
  double coherence_;
  double dt_max_;
  EvolveOptions opt_;
  double step_;
};

void check_inputs(const Dissipator& diss, const DensityMatrix& rho0) {
  diss.rates.validate();
  const int n = rho0.dim();
  if (n < 2 || n > 3) throw std::invalid_argument("density matrix must be 2x2 or 3x3");
  if (!rho0.is_physical(1e-10)) throw std::invalid_argument("initial state is not physical");
  if (diss.equilibrium.size() != n) throw std::invalid_argument("equilibrium size mismatch");
  if ((diss.equilibrium.array() < 0.0).any() || std::abs(diss.equilibrium.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("equilibrium populations must be a probability vector");
}

}  // namespace

DensityMatrix evolve(const HamiltonianSource& hamiltonian, const Dissipator& dissipator,
                     const DensityMatrix& rho0, double t_final, double dt_max,
                     const EvolveOptions& options) {
  check_inputs(dissipator, rho0);
  if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");

  Propagator prop(hamiltonian, dissipator, dt_max, options);
  Eigen::MatrixXcd rho = rho0.rho;
  prop.advance(rho, 0.0, t_final);
  return {rho};
}

HamiltonianSource two_level_hamiltonian(const DriveDecomposition& d, TransverseForm form) {
  return [d, form](double t) {
    const double split = d.Omega_0 - d.Omega_L1 * std::cos(d.Omega_L * t);
    Eigen::Matrix2cd h;
    cplx coupling;
    if (form == TransverseForm::linear) {
      coupling = 2.0 * d.Omega_T1 * std::cos(d.Omega_T * t);
    } else {
      coupling = d.Omega_T1 * std::polar(1.0, d.Omega_T * t);
    }
    h << -0.5 * split, coupling, std::conj(coupling), 0.5 * split;
    return Eigen::MatrixXcd(h);
  };
}

SteadyStateResult steady_state_polarization(const DriveDecomposition& d,
                                            const RelaxationRates& rates,
                                            double equilibrium_polarization,
                                            const SteadyStateOptions& options) {
  d.validate();
  rates.validate();
  if (!(equilibrium_polarization > 0.0 && equilibrium_polarization <= 1.0))
    throw std::invalid_argument("equilibrium polarization must lie in (0, 1]");

  const DensityMatrix start = DensityMatrix::polarized(equilibrium_polarization);
  Dissipator diss{rates, start.rho.diagonal().real(), options.convention};

  SteadyStateResult out;
  out.Ps = equilibrium_polarization;

  const double window = kTwoPi / (d.Omega_L1 > 0.0 ? d.Omega_L : d.Omega_T);
  const double fastest = std::abs(d.Omega_0) + d.Omega_L1 + 2.0 * d.Omega_T1 + d.Omega_T;
  const double dt_max = std::min(window, kTwoPi / fastest) / 4.0;
  const double settle = options.settle_lifetimes / std::min(rates.gamma1, rates.gamma2);

  const auto h = two_level_hamiltonian(d, options.transverse);
  Propagator prop(h, diss, dt_max, options.evolve);
  Eigen::MatrixXcd rho = start.rho;

  double t = 0.0;
  double previous = 0.0;
  double quiet = 0.0;
  for (long w = 0; w < options.max_windows; ++w) {
    const double avg = prop.advance(rho, t, t + window) / window;
    t += window;
    out.windows = w + 1;
    if (w > 0 && std::abs(avg - previous) < options.tolerance) {
      quiet += window;
      if (quiet >= settle) {
        out.P0 = avg;
        out.P_emp = 1.0 - out.P0 / out.Ps;
        return out;
      }
    } else {
      quiet = 0.0;
    }
    previous = avg;
  }
  throw NumericalError("steady state not reached after " + std::to_string(options.max_windows) +
                       " averaging windows");
}

}  // namespace nvmix

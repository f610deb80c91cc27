#include "nvmix/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace nvmix {

void AntennaModel::validate() const {
  if (!(std::isfinite(inductance) && inductance >= 0.0))
    throw std::invalid_argument("antenna inductance must be non-negative");
  if (!(std::isfinite(Z0) && Z0 > 0.0)) throw std::invalid_argument("Z0 must be positive");
  if (!(std::isfinite(calibration) && calibration > 0.0))
    throw std::invalid_argument("antenna calibration must be positive");
}

double AntennaModel::mismatch(double omega) const { return omega * inductance / Z0; }

double inductance_from_mismatch(double zeta, double omega, double Z0) {
  if (!(zeta >= 0.0 && omega > 0.0 && Z0 > 0.0))
    throw std::invalid_argument("mismatch inversion needs zeta >= 0, omega > 0, Z0 > 0");
  return zeta * Z0 / omega;
}

double current_per_sqrt_watt(const AntennaModel& antenna, double omega) {
  const double zeta = antenna.mismatch(omega);
  return 2.0 * std::sqrt(2.0 / antenna.Z0) / std::sqrt(1.0 + zeta * zeta);
}

double power_to_amplitude(double power_dBm, const AntennaModel& antenna) {
  antenna.validate();
  if (std::isnan(power_dBm)) throw std::invalid_argument("power must be a number");
  const double watts = std::pow(10.0, (power_dBm - 30.0) / 10.0);
  return antenna.calibration * std::sqrt(watts);
}

}  // namespace nvmix

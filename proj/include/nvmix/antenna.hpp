#pragma once

namespace nvmix {

/// Inductive antenna fed through a line of impedance Z0.
struct AntennaModel {
  double inductance = 0.0;   // henry
  double Z0 = 50.0;          // ohm
  double calibration = 0.0;  // rad/s of drive amplitude per sqrt(watt)

  void validate() const;

  /// Impedance mismatch coefficient zeta = omega L / Z0.
  double mismatch(double omega) const;
};

/// Inductance that produces mismatch zeta at angular frequency omega.
double inductance_from_mismatch(double zeta, double omega, double Z0 = 50.0);

/// Peak coil current per sqrt(watt) of incident power for a purely
/// inductive load: 2 sqrt(2 / Z0) / sqrt(1 + zeta^2).
double current_per_sqrt_watt(const AntennaModel& antenna, double omega);

/// calibration * sqrt(10^((dBm - 30) / 10) W).
double power_to_amplitude(double power_dBm, const AntennaModel& antenna);

}  // namespace nvmix

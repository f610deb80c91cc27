#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "nvmix/rwa.hpp"
#include "nvmix/spin_core.hpp"

namespace nvmix {

/// Static-field geometry: the field lies in the xz plane at angle alpha from
/// the NV axis.
struct GeometryConfig {
  double misalignment_alpha = 0.0;  // rad
  double field_to_current = 1.0;    // tesla per ampere of the field coil
  PhysicalConstants constants = PhysicalConstants::nv_defaults();

  void validate() const;
  Eigen::Vector3d direction() const;
  FieldVector field(double b) const;
};

enum class LineKind { superharmonic, second_larmor, two_tone };

std::string_view to_string(LineKind kind);

struct ResonanceLine {
  LineKind kind = LineKind::superharmonic;
  int l = 0;
  double B = 0.0;         // tesla
  double residual = 0.0;  // rad/s
  LevelPair pair;
};

/// Field interval searched for roots, bracketed on a uniform grid.
struct ScanWindow {
  double b_min = 0.0;
  double b_max = 0.3;
  int points = 2000;

  void validate() const;
};

/// Two-level transition frequency sqrt(zd^2 + omega_H^2) at field B.
double transition_frequency(double b, const GeometryConfig& geom);

/// Roots of f on the window: sign changes on the grid refined by bisection
/// to |bracket| <= tol.
std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  const ScanWindow& window, double tol = 1e-12);

/// Fields where omega_R0(B) = l omega_T for l in [l_min, l_max], l_min >= 1.
std::vector<ResonanceLine> superharmonic_fields(double omega_T, int l_min, int l_max,
                                                const GeometryConfig& geom,
                                                const ScanWindow& window = {});

/// Fields where 2 omega_R0(B) = omega_T.
std::vector<ResonanceLine> second_larmor_fields(double omega_T, const GeometryConfig& geom,
                                                const ScanWindow& window = {});

/// Exact splitting E_n2 - E_n1 of the ascending eigen-levels.
double exact_splitting(double b, const GeometryConfig& geom, LevelPair pair);

/// Fields where the exact splitting of pair equals Omega_T + l Omega_L.
std::vector<ResonanceLine> two_tone_matching(double Omega_T, double Omega_L, int l_min,
                                             int l_max, const GeometryConfig& geom,
                                             LevelPair pair, const ScanWindow& window = {});

}  // namespace nvmix

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvmix/antenna.hpp"
#include "nvmix/resonance.hpp"
#include "nvmix/rwa.hpp"

namespace nvmix {

/// Closed set of sweepable quantities. Stored values use tesla, ampere, dBm
/// and volt respectively.
enum class AxisParam { B, I_mag, P_T, P_L, V_RF };

std::string_view to_string(AxisParam p);
std::string_view base_unit(AxisParam p);
std::optional<AxisParam> parse_axis_param(std::string_view name);

struct AxisSpec {
  AxisParam param = AxisParam::B;
  double min = 0.0;
  double max = 1.0;
  int points = 2;

  double value(int i) const;
  double step() const { return (max - min) / (points - 1); }
  void validate() const;
};

enum class DriveMode { single_antenna, two_antenna };

/// One drive tone. The amplitude comes from, in order of precedence, the
/// swept axis, a fixed power through the antenna, a fixed voltage (RF only),
/// or a fixed amplitude.
struct ToneConfig {
  double frequency = 0.0;                  // rad/s
  std::optional<double> power_dBm;
  std::optional<double> voltage;           // volt
  std::optional<double> amplitude;         // rad/s
  double volt_calibration = 0.0;           // rad/s per volt
  std::optional<AntennaModel> antenna;
};

struct SweepConfig {
  DriveMode mode = DriveMode::single_antenna;
  AxisSpec x;
  AxisSpec y;
  std::optional<double> field;  // tesla, when no axis sets it
  GeometryConfig geometry;
  ToneConfig mw;  // transverse loop antenna
  ToneConfig rf;  // longitudinal solenoid
  RelaxationRates rates;
  std::vector<LevelPair> pairs = {{1, 2}, {1, 3}, {2, 3}};
  int l_max = 30;
  int oracle_samples = 25;

  // Resonance-line search used by the `resonances` command and overlays.
  int line_l_min = 1;
  int line_l_max = 10;
  ScanWindow line_window;

  /// Throws ConfigError describing the first inconsistency.
  void validate() const;
};

/// Parses the key = value [unit] format. Throws ConfigError with the
/// source name and line number on malformed input.
SweepConfig parse_config(std::istream& in, const std::string& source = "<config>");
SweepConfig load_config(const std::filesystem::path& path);

struct GridCell {
  double P = 0.0;
  double ratio = 1.0;
  int l_star = 0;
  LevelPair pair;
  bool flagged = false;  // evaluation failed, P reported as 0
};

struct LineAnnotation {
  LineKind kind = LineKind::superharmonic;
  int l = 0;
  LevelPair pair;
  char axis = 'x';          // axis the coordinate lives on
  double coordinate = 0.0;  // in that axis' base unit
};

struct SweepGrid {
  AxisSpec x;
  AxisSpec y;
  std::vector<GridCell> cells;  // row-major, y outer
  std::vector<LineAnnotation> overlay;

  const GridCell& at(int ix, int iy) const { return cells[static_cast<size_t>(iy) * x.points + ix]; }
  GridCell& at(int ix, int iy) { return cells[static_cast<size_t>(iy) * x.points + ix]; }
};

/// Everything that went into one cell's value.
struct CellDetail {
  GridCell cell;
  DriveDecomposition decomposition;  // of the winning pair
  double b = 0.0;                    // tesla
};

/// Evaluates one grid point. Pure; never throws for numerical failures,
/// which are reported through cell.flagged.
CellDetail evaluate_cell(const SweepConfig& config, double x_value, double y_value);

/// Evaluates every cell, distributing rows over `threads` workers (0 picks
/// the hardware concurrency). Output order follows grid indices.
SweepGrid run_map(const SweepConfig& config, int threads = 1);

/// Lines the config's geometry implies: superharmonic and second-Larmor
/// lines for a single antenna, two-tone lines for every pair otherwise.
std::vector<ResonanceLine> config_resonances(const SweepConfig& config);

/// Attaches lines in axis coordinates. B lines map onto a B axis directly and
/// onto an I_mag axis through field_to_current. Throws ConfigError when the
/// grid has no field axis and lines are given.
SweepGrid overlay_resonances(SweepGrid grid, std::span<const ResonanceLine> lines,
                             const GeometryConfig& geometry);

void write_csv(const SweepGrid& grid, std::ostream& out);
void write_csv(const SweepGrid& grid, const std::filesystem::path& path);
SweepGrid read_csv(std::istream& in);
SweepGrid read_csv(const std::filesystem::path& path);

/// Heatmap with overlay lines. Throws IoError.
void write_png(const SweepGrid& grid, const std::filesystem::path& path);

struct OracleSample {
  int ix = 0;
  int iy = 0;
  double P_rwa = 0.0;
  double P_emp = 0.0;
  bool failed = false;
};

struct OracleReport {
  std::vector<OracleSample> samples;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
};

/// Re-evaluates a deterministic, evenly spread subset of cells with the
/// time-domain steady-state solver and compares against the map.
OracleReport oracle_check(const SweepConfig& config, const SweepGrid& grid, int samples,
                          int threads = 1);

}  // namespace nvmix

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nvmix/errors.hpp"
#include "nvmix/frame_transform.hpp"
#include "nvmix/lindblad.hpp"
#include "nvmix/sweep.hpp"

namespace nvmix {
namespace {

struct Point {
  std::optional<double> b;
  std::optional<double> mw_dBm;
  std::optional<double> rf_dBm;
  std::optional<double> rf_volts;
};

void assign(Point& p, AxisParam param, double v, const SweepConfig& c) {
  switch (param) {
    case AxisParam::B: p.b = v; break;
    case AxisParam::I_mag: p.b = v * c.geometry.field_to_current; break;
    case AxisParam::P_T: p.mw_dBm = v; break;
    case AxisParam::P_L: p.rf_dBm = v; break;
    case AxisParam::V_RF: p.rf_volts = v; break;
  }
}

double tone_amplitude(const ToneConfig& t, std::optional<double> swept_dBm,
                      std::optional<double> swept_volts) {
  if (swept_dBm) return power_to_amplitude(*swept_dBm, *t.antenna);
  if (swept_volts) return *swept_volts * t.volt_calibration;
  if (t.power_dBm && t.antenna) return power_to_amplitude(*t.power_dBm, *t.antenna);
  if (t.voltage) return *t.voltage * t.volt_calibration;
  return t.amplitude.value_or(0.0);
}

int threads_to_use(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = std::min(threads_to_use(threads), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

CellDetail evaluate_cell(const SweepConfig& config, double x_value, double y_value) {
  Point p;
  assign(p, config.x.param, x_value, config);
  assign(p, config.y.param, y_value, config);

  CellDetail out;
  out.b = p.b.value_or(config.field.value_or(0.0));
  try {
    const StaticFrame frame = static_frame(config.geometry.field(out.b), config.geometry.constants);
    const double mw_amp = tone_amplitude(config.mw, p.mw_dBm, std::nullopt);

    std::vector<MixingTerm> terms;
    std::vector<DriveDecomposition> decomps;
    for (const LevelPair pair : config.pairs) {
      DriveDecomposition d;
      if (config.mode == DriveMode::single_antenna) {
        d = single_antenna_decomposition(mw_amp, config.mw.frequency, frame, pair);
      } else {
        const double rf_amp = tone_amplitude(config.rf, p.rf_dBm, p.rf_volts);
        d = two_antenna_decomposition(rf_amp, config.rf.frequency, mw_amp, config.mw.frequency,
                                      frame, pair);
      }
      decomps.push_back(d);
      const SidebandSet s = jacobi_anger_sidebands(d, config.l_max);
      terms.insert(terms.end(), s.terms.begin(), s.terms.end());
    }
    const DominantTerm best = dominant_term(terms, config.rates);
    out.cell.P = best.P;
    out.cell.ratio = best.ratio;
    out.cell.l_star = best.term.l;
    out.cell.pair = best.term.pair;
    for (const auto& d : decomps)
      if (d.pair == best.term.pair) out.decomposition = d;
  } catch (const std::invalid_argument&) {
    out.cell = GridCell{};
    out.cell.flagged = true;
  }
  return out;
}

SweepGrid run_map(const SweepConfig& config, int threads) {
  config.validate();
  SweepGrid grid;
  grid.x = config.x;
  grid.y = config.y;
  grid.cells.resize(static_cast<size_t>(config.x.points) * config.y.points);

  parallel_for(config.y.points, threads, [&](int iy) {
    const double yv = config.y.value(iy);
    for (int ix = 0; ix < config.x.points; ++ix)
      grid.at(ix, iy) = evaluate_cell(config, config.x.value(ix), yv).cell;
  });
  return grid;
}

std::vector<ResonanceLine> config_resonances(const SweepConfig& config) {
  std::vector<ResonanceLine> lines;
  if (config.mode == DriveMode::single_antenna) {
    lines = superharmonic_fields(config.mw.frequency, std::max(1, config.line_l_min),
                                 std::max(1, config.line_l_max), config.geometry,
                                 config.line_window);
    const auto second = second_larmor_fields(config.mw.frequency, config.geometry, config.line_window);
    lines.insert(lines.end(), second.begin(), second.end());
  } else {
    for (const LevelPair pair : config.pairs) {
      const auto l = two_tone_matching(config.mw.frequency, config.rf.frequency, config.line_l_min,
                                       config.line_l_max, config.geometry, pair, config.line_window);
      lines.insert(lines.end(), l.begin(), l.end());
    }
  }
  return lines;
}

SweepGrid overlay_resonances(SweepGrid grid, std::span<const ResonanceLine> lines,
                             const GeometryConfig& geometry) {
  if (lines.empty()) return grid;
  char axis = 0;
  AxisParam param = AxisParam::B;
  for (const auto& [a, spec] : {std::pair{'x', grid.x}, std::pair{'y', grid.y}}) {
    if (spec.param == AxisParam::B || spec.param == AxisParam::I_mag) {
      axis = a;
      param = spec.param;
    }
  }
  if (!axis) throw ConfigError("resonance lines need a B or I_mag axis to be drawn on");

  for (const auto& line : lines) {
    LineAnnotation a;
    a.kind = line.kind;
    a.l = line.l;
    a.pair = line.pair;
    a.axis = axis;
    a.coordinate = param == AxisParam::B ? line.B : line.B / geometry.field_to_current;
    grid.overlay.push_back(a);
  }
  return grid;
}

OracleReport oracle_check(const SweepConfig& config, const SweepGrid& grid, int samples,
                          int threads) {
  const int total = static_cast<int>(grid.cells.size());
  samples = std::clamp(samples, 1, total);
  OracleReport report;
  report.samples.resize(samples);

  parallel_for(samples, threads, [&](int k) {
    // Rows evenly spaced, columns on a golden-ratio sequence so samples do
    // not line up in one column when the stride divides the row length.
    OracleSample& s = report.samples[k];
    const double frac = std::fmod((k + 0.5) * 0.6180339887498949, 1.0);
    s.iy = static_cast<int>((static_cast<long>(2 * k + 1) * grid.y.points) / (2L * samples));
    s.ix = std::min(grid.x.points - 1, static_cast<int>(frac * grid.x.points));
    const CellDetail detail = evaluate_cell(config, grid.x.value(s.ix), grid.y.value(s.iy));
    s.P_rwa = detail.cell.P;
    if (detail.cell.flagged) {
      s.failed = true;
      return;
    }
    try {
      s.P_emp = steady_state_polarization(detail.decomposition, config.rates).P_emp;
    } catch (const NumericalError&) {
      s.failed = true;
    }
  });

  for (const auto& s : report.samples) {
    if (s.failed) continue;
    const double dev = std::abs(s.P_rwa - s.P_emp);
    report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    if (s.P_rwa > 0.0) report.max_rel_deviation = std::max(report.max_rel_deviation, dev / s.P_rwa);
  }
  return report;
}

}  // namespace nvmix

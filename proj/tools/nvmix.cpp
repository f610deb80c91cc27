#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nvmix/errors.hpp"
#include "nvmix/resonance.hpp"
#include "nvmix/spin_core.hpp"
#include "nvmix/sweep.hpp"
#include "nvmix/units.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

bool has_field_axis(const nvmix::SweepGrid& g) {
  auto field = [](nvmix::AxisParam p) {
    return p == nvmix::AxisParam::B || p == nvmix::AxisParam::I_mag;
  };
  return field(g.x.param) || field(g.y.param);
}

int run_map_command(const std::string& config_path, const std::string& csv, const std::string& png,
                    bool oracle, int l_max, int threads) {
  nvmix::SweepConfig config = nvmix::load_config(config_path);
  if (l_max >= 0) config.l_max = l_max;
  config.validate();

  nvmix::SweepGrid grid = nvmix::run_map(config, threads);
  if (has_field_axis(grid)) {
    const auto lines = nvmix::config_resonances(config);
    grid = nvmix::overlay_resonances(std::move(grid), lines, config.geometry);
  }
  nvmix::write_csv(grid, std::filesystem::path(csv));
  nvmix::write_png(grid, std::filesystem::path(png));

  int flagged = 0, questionable = 0;
  for (const auto& c : grid.cells) {
    flagged += c.flagged;
    questionable += !c.flagged && c.ratio < nvmix::kRwaQuestionableRatio;
  }
  std::printf("cells %zu, flagged %d, rwa-questionable %d\n", grid.cells.size(), flagged,
              questionable);

  if (oracle) {
    const auto report = nvmix::oracle_check(config, grid, config.oracle_samples, threads);
    int failed = 0;
    for (const auto& s : report.samples) {
      std::printf("oracle cell (%d,%d): P_rwa %.6f P_emp %.6f%s\n", s.ix, s.iy, s.P_rwa, s.P_emp,
                  s.failed ? " FAILED" : "");
      failed += s.failed;
    }
    std::printf("oracle max abs deviation %.6g, max rel deviation %.6g\n",
                report.max_abs_deviation, report.max_rel_deviation);
    if (failed == static_cast<int>(report.samples.size())) {
      std::fprintf(stderr, "error: every oracle sample failed\n");
      return kExitNumerical;
    }
  }
  return 0;
}

int run_resonances_command(const std::string& config_path) {
  const nvmix::SweepConfig config = nvmix::load_config(config_path);
  const auto lines = nvmix::config_resonances(config);
  std::printf("kind,l,pair,B_T,residual_rad_s\n");
  for (const auto& line : lines)
    std::printf("%s,%d,%d%d,%.12g,%.3g\n", std::string(nvmix::to_string(line.kind)).c_str(),
                line.l, line.pair.n1, line.pair.n2, line.B, line.residual);
  return 0;
}

int run_levels_command(double bmin, double bmax, int points, double alpha_deg) {
  if (!(points >= 2) || !std::isfinite(bmin) || !std::isfinite(bmax) || !(bmax > bmin))
    throw nvmix::ConfigError("levels needs finite bmin < bmax and points >= 2");
  nvmix::GeometryConfig geom;
  geom.misalignment_alpha = nvmix::degrees(alpha_deg);
  std::vector<double> b(points);
  for (int i = 0; i < points; ++i)
    b[i] = i == points - 1 ? bmax : bmin + (bmax - bmin) * i / (points - 1);
  const auto levels = nvmix::eigen_levels(b, geom.direction(), geom.constants);
  std::printf("B_T,E1_MHz,E2_MHz,E3_MHz\n");
  for (const auto& p : levels)
    std::printf("%.9g,%.9g,%.9g,%.9g\n", p.b, nvmix::to_mhz(p.energies[0]),
                nvmix::to_mhz(p.energies[1]), nvmix::to_mhz(p.energies[2]));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-mixing polarization maps for the NV ground-state triplet"};
  app.require_subcommand(1);

  std::string config_path, csv_path, png_path;
  bool oracle = false;
  int l_max = -1;
  int threads = 0;
  auto* map = app.add_subcommand("map", "Compute a polarization map");
  map->add_option("--config", config_path, "Sweep configuration file")->required();
  map->add_option("--out-csv", csv_path, "CSV output path")->required();
  map->add_option("--out-png", png_path, "PNG output path")->required();
  map->add_flag("--oracle", oracle, "Cross-check sampled cells with the time-domain solver");
  map->add_option("--l-max", l_max, "Sideband truncation order")->check(CLI::NonNegativeNumber);
  map->add_option("--threads", threads, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);

  std::string res_config;
  auto* res = app.add_subcommand("resonances", "List resonance fields implied by a config");
  res->add_option("--config", res_config, "Sweep configuration file")->required();

  double bmin = 0.0, bmax = 0.3, alpha_deg = 0.0;
  int points = 301;
  auto* lev = app.add_subcommand("levels", "Print the three triplet eigen-energies versus B");
  lev->add_option("--bmin", bmin, "Lowest field in tesla")->required();
  lev->add_option("--bmax", bmax, "Highest field in tesla")->required();
  lev->add_option("--points", points, "Number of field points")->required();
  lev->add_option("--alpha", alpha_deg, "Field misalignment in degrees")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*map) return run_map_command(config_path, csv_path, png_path, oracle, l_max, threads);
    if (*res) return run_resonances_command(res_config);
    if (*lev) return run_levels_command(bmin, bmax, points, alpha_deg);
  } catch (const nvmix::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nvmix::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const nvmix::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}

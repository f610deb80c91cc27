#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvmix/errors.hpp"
#include "nvmix/sweep.hpp"

namespace nvmix {
namespace {

constexpr const char* kHeader = "x,y,P,dominance_ratio,l_star";

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_axis(std::ostream& out, char name, const AxisSpec& a) {
  out << "# axis " << name << ' ' << to_string(a.param) << ' ' << base_unit(a.param) << ' '
      << fmt17(a.min) << ' ' << fmt17(a.max) << ' ' << a.points << '\n';
}

AxisSpec parse_axis(const std::string& line) {
  std::istringstream ss(line);
  std::string hash, word, name, param, unit, min, max;
  int points = 0;
  ss >> hash >> word >> name >> param >> unit >> min >> max >> points;
  const auto p = parse_axis_param(param);
  if (!ss || !p || unit != base_unit(*p)) throw IoError("malformed axis line: " + line);
  AxisSpec a;
  a.param = *p;
  a.min = std::stod(min);
  a.max = std::stod(max);
  a.points = points;
  return a;
}

}  // namespace

void write_csv(const SweepGrid& grid, std::ostream& out) {
  write_axis(out, 'x', grid.x);
  write_axis(out, 'y', grid.y);
  out << kHeader << '\n';
  for (int iy = 0; iy < grid.y.points; ++iy) {
    const std::string yv = fmt9(grid.y.value(iy));
    for (int ix = 0; ix < grid.x.points; ++ix) {
      const GridCell& c = grid.at(ix, iy);
      out << fmt9(grid.x.value(ix)) << ',' << yv << ',' << fmt9(c.P) << ',' << fmt9(c.ratio)
          << ',' << c.l_star << '\n';
    }
  }
}

void write_csv(const SweepGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(grid, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

SweepGrid read_csv(std::istream& in) {
  SweepGrid grid;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV");
  grid.x = parse_axis(line);
  if (!std::getline(in, line)) throw IoError("missing y axis line");
  grid.y = parse_axis(line);
  if (!std::getline(in, line) || line != kHeader) throw IoError("missing CSV column header");

  const size_t expected = static_cast<size_t>(grid.x.points) * grid.y.points;
  grid.cells.reserve(expected);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field[5];
    for (auto& f : field)
      if (!std::getline(ss, f, ',')) throw IoError("short CSV row: " + line);
    GridCell c;
    try {
      c.P = std::stod(field[2]);
      c.ratio = std::stod(field[3]);
      c.l_star = std::stoi(field[4]);
    } catch (const std::logic_error&) {
      throw IoError("malformed CSV row: " + line);
    }
    grid.cells.push_back(c);
  }
  if (grid.cells.size() != expected)
    throw IoError("CSV has " + std::to_string(grid.cells.size()) + " rows, expected " +
                  std::to_string(expected));
  return grid;
}

SweepGrid read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace nvmix

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "nvmix/errors.hpp"
#include "nvmix/sweep.hpp"

namespace nvmix {
namespace {

using Rgb = std::array<std::uint8_t, 3>;

// 5x7 bitmap glyphs, one byte per row, bit 4 is the leftmost column.
const std::map<char, std::array<std::uint8_t, 7>>& glyphs() {
  static const std::map<char, std::array<std::uint8_t, 7>> g = {
      {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
      {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
      {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
      {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
      {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
      {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
      {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
      {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
      {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
      {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
      {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
      {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}},
      {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}},
      {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
      {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}},
      {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
      {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
      {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
      {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
      {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
      {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
      {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
      {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
      {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
      {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
      {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
      {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
  };
  return g;
}

Rgb colormap(double v) {
  static constexpr std::array<Rgb, 5> stops = {{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  v = std::clamp(v, 0.0, 1.0) * (stops.size() - 1);
  const size_t i = std::min(static_cast<size_t>(v), stops.size() - 2);
  const double f = v - i;
  Rgb c;
  for (int k = 0; k < 3; ++k)
    c[k] = static_cast<std::uint8_t>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  return c;
}

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), px_(static_cast<size_t>(w) * h, Rgb{255, 255, 255}) {}

  void set(int x, int y, Rgb c) {
    if (x >= 0 && y >= 0 && x < w_ && y < h_) px_[static_cast<size_t>(y) * w_ + x] = c;
  }

  void text(int x, int y, const std::string& s, Rgb c = {0, 0, 0}) {
    for (char ch : s) {
      const char key = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      const auto it = glyphs().find(key);
      if (it != glyphs().end())
        for (int r = 0; r < 7; ++r)
          for (int col = 0; col < 5; ++col)
            if (it->second[r] & (0x10 >> col)) set(x + col, y + r, c);
      x += 6;
    }
  }

  void save(const std::filesystem::path& path) const {
    std::FILE* fp = std::fopen(path.string().c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path.string() + " for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      std::fclose(fp);
      throw IoError("failed encoding PNG " + path.string());
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, w_, h_, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < h_; ++y)
      png_write_row(png, reinterpret_cast<png_const_bytep>(px_.data() + static_cast<size_t>(y) * w_));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) throw IoError("failed writing " + path.string());
  }

 private:
  int w_, h_;
  std::vector<Rgb> px_;
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-300 ? 0.0 : v);
  return buf;
}

std::string axis_label(const AxisSpec& a) {
  return std::string(to_string(a.param)) + " (" + std::string(base_unit(a.param)) + ")";
}

Rgb line_color(LineKind k) {
  switch (k) {
    case LineKind::superharmonic: return {255, 255, 255};
    case LineKind::second_larmor: return {230, 30, 30};
    case LineKind::two_tone: return {255, 140, 0};
  }
  return {0, 0, 0};
}

}  // namespace

void write_png(const SweepGrid& grid, const std::filesystem::path& path) {
  const int sx = std::max(1, 800 / grid.x.points);
  const int sy = std::max(1, 500 / grid.y.points);
  const int pw = grid.x.points * sx;
  const int ph = grid.y.points * sy;
  const int left = 80, bottom = 45, top = 12, right = 70;
  Canvas cv(left + pw + right, top + ph + bottom);

  for (int iy = 0; iy < grid.y.points; ++iy)
    for (int ix = 0; ix < grid.x.points; ++ix) {
      const GridCell& c = grid.at(ix, iy);
      const Rgb col = c.flagged ? Rgb{128, 128, 128} : colormap(c.P);
      for (int dy = 0; dy < sy; ++dy)
        for (int dx = 0; dx < sx; ++dx)
          cv.set(left + ix * sx + dx, top + ph - 1 - (iy * sy + dy), col);
    }

  for (const auto& a : grid.overlay) {
    const AxisSpec& spec = a.axis == 'x' ? grid.x : grid.y;
    const double f = (a.coordinate - spec.min) / (spec.max - spec.min);
    if (f < 0.0 || f > 1.0) continue;
    const Rgb col = line_color(a.kind);
    if (a.axis == 'x') {
      const int px = left + static_cast<int>(std::lround(f * (pw - 1)));
      for (int y = top; y < top + ph; ++y)
        if ((y / 4) % 2 == 0) cv.set(px, y, col);
    } else {
      const int py = top + ph - 1 - static_cast<int>(std::lround(f * (ph - 1)));
      for (int x = left; x < left + pw; ++x)
        if ((x / 4) % 2 == 0) cv.set(x, py, col);
    }
  }

  const Rgb black{0, 0, 0};
  for (int x = left - 1; x <= left + pw; ++x) {
    cv.set(x, top - 1, black);
    cv.set(x, top + ph, black);
  }
  for (int y = top - 1; y <= top + ph; ++y) {
    cv.set(left - 1, y, black);
    cv.set(left + pw, y, black);
  }

  constexpr int kTicks = 5;
  for (int t = 0; t < kTicks; ++t) {
    const double f = static_cast<double>(t) / (kTicks - 1);
    const int px = left + static_cast<int>(std::lround(f * (pw - 1)));
    for (int k = 1; k <= 4; ++k) cv.set(px, top + ph + k, black);
    const std::string xl = tick_label(grid.x.min + f * (grid.x.max - grid.x.min));
    cv.text(px - 3 * static_cast<int>(xl.size()), top + ph + 7, xl);

    const int py = top + ph - 1 - static_cast<int>(std::lround(f * (ph - 1)));
    for (int k = 1; k <= 4; ++k) cv.set(left - 1 - k, py, black);
    const std::string yl = tick_label(grid.y.min + f * (grid.y.max - grid.y.min));
    cv.text(left - 8 - 6 * static_cast<int>(yl.size()), py - 3, yl);
  }
  const std::string xlab = axis_label(grid.x);
  cv.text(left + pw / 2 - 3 * static_cast<int>(xlab.size()), top + ph + 25, xlab);
  cv.text(2, top + ph + 25, axis_label(grid.y));

  // Colour bar for P in [0, 1].
  const int bx = left + pw + 20;
  for (int y = 0; y < ph; ++y) {
    const Rgb col = colormap(1.0 - static_cast<double>(y) / std::max(1, ph - 1));
    for (int x = 0; x < 12; ++x) cv.set(bx + x, top + y, col);
  }
  cv.text(bx + 15, top, "1");
  cv.text(bx + 15, top + ph - 7, "0");
  cv.text(bx + 2, top + ph + 7, "P");

  cv.save(path);
}

}  // namespace nvmix

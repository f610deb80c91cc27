#include "nvmix/resonance.hpp"

#include <cmath>
#include <stdexcept>

#include "nvmix/units.hpp"

namespace nvmix {

void GeometryConfig::validate() const {
  constants.validate();
  if (!(std::isfinite(misalignment_alpha) && std::abs(misalignment_alpha) < kPi / 2))
    throw std::invalid_argument("misalignment angle must satisfy |alpha| < pi/2");
  if (!(std::isfinite(field_to_current) && field_to_current > 0.0))
    throw std::invalid_argument("field_to_current must be positive");
}

Eigen::Vector3d GeometryConfig::direction() const {
  return {std::sin(misalignment_alpha), 0.0, std::cos(misalignment_alpha)};
}

FieldVector GeometryConfig::field(double b) const {
  // Components set directly so that y is exactly zero.
  const double w = constants.gamma_e * b;
  return {w * std::sin(misalignment_alpha), 0.0, w * std::cos(misalignment_alpha)};
}

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::superharmonic: return "superharmonic";
    case LineKind::second_larmor: return "second_larmor";
    case LineKind::two_tone: return "two_tone";
  }
  return "unknown";
}

void ScanWindow::validate() const {
  if (!(std::isfinite(b_min) && std::isfinite(b_max) && b_max > b_min))
    throw std::invalid_argument("scan window must satisfy b_min < b_max");
  if (points < 2) throw std::invalid_argument("scan window needs at least two points");
}

double transition_frequency(double b, const GeometryConfig& geom) {
  const double w = geom.constants.gamma_e * b;
  const double zd = w * std::cos(geom.misalignment_alpha) - geom.constants.omega_D;
  const double wh = kSqrt2 * w * std::sin(geom.misalignment_alpha);
  return std::hypot(zd, wh);
}

std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  const ScanWindow& window, double tol) {
  window.validate();
  std::vector<double> roots;
  const double step = (window.b_max - window.b_min) / (window.points - 1);
  double lo = window.b_min;
  double flo = f(lo);
  for (int i = 1; i < window.points; ++i) {
    const double hi = (i == window.points - 1) ? window.b_max : window.b_min + i * step;
    const double fhi = f(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
    } else if (std::signbit(flo) != std::signbit(fhi) && fhi != 0.0) {
      double a = lo, b = hi, fa = flo;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  if (flo == 0.0) roots.push_back(lo);
  return roots;
}

namespace {

std::vector<ResonanceLine> hyperbola_lines(double target, int l, LineKind kind,
                                           double scale, const GeometryConfig& geom,
                                           const ScanWindow& window) {
  auto f = [&](double b) { return scale * transition_frequency(b, geom) - target; };
  std::vector<ResonanceLine> out;
  for (double b : bracket_roots(f, window)) out.push_back({kind, l, b, std::abs(f(b)), {1, 2}});
  return out;
}

}  // namespace

std::vector<ResonanceLine> superharmonic_fields(double omega_T, int l_min, int l_max,
                                                const GeometryConfig& geom,
                                                const ScanWindow& window) {
  geom.validate();
  if (!(std::isfinite(omega_T) && omega_T > 0.0))
    throw std::invalid_argument("omega_T must be positive");
  if (l_min < 1 || l_max < l_min)
    throw std::invalid_argument("superharmonic orders must be positive integers");

  std::vector<ResonanceLine> out;
  for (int l = l_min; l <= l_max; ++l) {
    auto lines = hyperbola_lines(l * omega_T, l, LineKind::superharmonic, 1.0, geom, window);
    out.insert(out.end(), lines.begin(), lines.end());
  }
  return out;
}

std::vector<ResonanceLine> second_larmor_fields(double omega_T, const GeometryConfig& geom,
                                                const ScanWindow& window) {
  geom.validate();
  if (!(std::isfinite(omega_T) && omega_T > 0.0))
    throw std::invalid_argument("omega_T must be positive");
  return hyperbola_lines(omega_T, 2, LineKind::second_larmor, 2.0, geom, window);
}

double exact_splitting(double b, const GeometryConfig& geom, LevelPair pair) {
  const auto e = sorted_eigenvalues(build_hamiltonian(geom.field(b), geom.constants));
  return e[pair.n2 - 1] - e[pair.n1 - 1];
}

std::vector<ResonanceLine> two_tone_matching(double Omega_T, double Omega_L, int l_min,
                                             int l_max, const GeometryConfig& geom,
                                             LevelPair pair, const ScanWindow& window) {
  geom.validate();
  if (!(std::isfinite(Omega_T) && Omega_T > 0.0 && std::isfinite(Omega_L) && Omega_L >= 0.0))
    throw std::invalid_argument("drive frequencies must be positive");
  if (!pair.valid()) throw std::invalid_argument("invalid level pair");
  if (l_max < l_min) throw std::invalid_argument("empty order range");

  std::vector<ResonanceLine> out;
  const int top = Omega_L == 0.0 ? l_min : l_max;
  for (int l = l_min; l <= top; ++l) {
    const double target = Omega_T + l * Omega_L;
    if (target <= 0.0) continue;
    auto f = [&](double b) { return exact_splitting(b, geom, pair) - target; };
    for (double b : bracket_roots(f, window))
      out.push_back({LineKind::two_tone, Omega_L == 0.0 ? 0 : l, b, std::abs(f(b)), pair});
  }
  return out;
}

}  // namespace nvmix

#pragma once

// Reference implementations that share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

// J_n(x) = (1/2pi) int_0^2pi cos(n t - x sin t) dt. The trapezoid rule is
// spectrally accurate for this periodic integrand.
inline double bessel_integral(int n, double x, int nodes = 512) {
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = 2.0 * std::numbers::pi * k / nodes;
    s += std::cos(n * t - x * std::sin(t));
  }
  return s / nodes;
}

// Root of J_n between a and b by bisection on the integral form.
inline double bessel_zero(int n, double a, double b) {
  double fa = bessel_integral(n, a);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = bessel_integral(n, m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Eigenvalues of a Hermitian 3x3 matrix from its characteristic cubic,
// solved in trigonometric form. Ascending.
inline std::array<double, 3> hermitian_eigenvalues(const Eigen::Matrix3cd& a) {
  const double tr = a.trace().real();
  const double q = tr / 3.0;
  Eigen::Matrix3cd b = a - q * Eigen::Matrix3cd::Identity();
  const double p2 = (b * b).trace().real() / 6.0;
  const double p = std::sqrt(std::max(p2, 0.0));
  if (p == 0.0) return {q, q, q};
  const double r = std::clamp((b / p).determinant().real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  std::array<double, 3> e = {q + 2 * p * std::cos(phi),
                             q + 2 * p * std::cos(phi + 2 * std::numbers::pi / 3),
                             q + 2 * p * std::cos(phi + 4 * std::numbers::pi / 3)};
  std::sort(e.begin(), e.end());
  return e;
}

// Every sign change of f on a uniform grid, refined by bisection.
inline std::vector<double> dense_roots(const std::function<double(double)>& f, double lo,
                                       double hi, int n, double tol = 1e-13) {
  std::vector<double> roots;
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x1 = lo + (hi - lo) * i / n;
    const double f1 = f(x1);
    if (f0 == 0.0) roots.push_back(x0);
    else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
      double a = x0, b = x1, fa = f0;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else { b = m; }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace oracle

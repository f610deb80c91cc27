#include "nvmix/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvmix {
namespace {

constexpr double kSeriesLimit = 10.0;

// Power series for n >= 0, x >= 0.
double series_j(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  double term = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
  if (term == 0.0) return 0.0;
  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && static_cast<double>(k) * k > q) break;
  }
  return sum;
}

// Miller backward recurrence for x > 0, returns J_0..J_n_max.
std::vector<double> miller_sequence(int n_max, double x) {
  const int top = std::max(n_max, static_cast<int>(std::ceil(x)));
  const int start = 2 * ((top + 30 + static_cast<int>(std::sqrt(160.0 * top))) / 2);

  std::vector<double> out(n_max + 1, 0.0);
  double next = 0.0;  // J_{k+1}
  double cur = 1.0;   // J_k, unnormalized
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
    const int order = k - 1;
    if (order <= n_max) out[order] = cur;
    if (order > 0 && order % 2 == 0) norm += 2.0 * cur;
  }
  norm += cur;  // J_0
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (!std::isfinite(x)) throw std::invalid_argument("argument must be finite");

  const double ax = std::abs(x);
  std::vector<double> out;
  if (ax <= kSeriesLimit) {
    out.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = series_j(n, ax);
  } else {
    out = miller_sequence(n_max, ax);
  }
  if (x < 0.0)
    for (int n = 1; n <= n_max; n += 2) out[n] = -out[n];
  return out;
}

double bessel_j(int n, double x) {
  const int an = std::abs(n);
  double v;
  if (std::abs(x) <= kSeriesLimit) {
    if (!std::isfinite(x)) throw std::invalid_argument("argument must be finite");
    v = series_j(an, std::abs(x));
    if (x < 0.0 && an % 2 == 1) v = -v;
  } else {
    v = bessel_j_sequence(an, x)[an];
  }
  if (n < 0 && an % 2 == 1) v = -v;
  return v;
}

}  // namespace nvmix

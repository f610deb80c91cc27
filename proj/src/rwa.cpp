#include "nvmix/rwa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nvmix/bessel.hpp"

namespace nvmix {

void DriveDecomposition::validate() const {
  const bool finite = std::isfinite(Omega_0) && std::isfinite(Omega_L1) &&
                      std::isfinite(Omega_L) && std::isfinite(Omega_T1) &&
                      std::isfinite(Omega_T);
  if (!finite) throw std::invalid_argument("drive decomposition must be finite");
  if (Omega_L <= 0.0 || Omega_T <= 0.0)
    throw std::invalid_argument("drive frequencies must be positive");
  if (Omega_L1 < 0.0 || Omega_T1 < 0.0)
    throw std::invalid_argument("drive amplitudes must be non-negative");
  if (!pair.valid()) throw std::invalid_argument("invalid level pair");
}

void RelaxationRates::validate() const {
  if (!(std::isfinite(gamma1) && gamma1 > 0.0 && std::isfinite(gamma2) && gamma2 > 0.0))
    throw std::invalid_argument("relaxation rates must be positive");
}

cplx hollow_frame_element(cplx omega_prime_offdiag, double accumulated_phase) {
  return omega_prime_offdiag * std::polar(1.0, -accumulated_phase);
}

double modulated_phase(const DriveDecomposition& d, double t) {
  return d.Omega_0 * t - d.Omega_L1 / d.Omega_L * std::sin(d.Omega_L * t);
}

SidebandSet jacobi_anger_sidebands(const DriveDecomposition& d, int l_max) {
  d.validate();
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");

  const double x = d.Omega_L1 / d.Omega_L;
  const std::vector<double> j = bessel_j_sequence(l_max, x);

  SidebandSet out;
  int reach = l_max;
  if (x != 0.0) {
    // Past the turning point |J_l| only decreases; stop where it underflows.
    for (int l = 0; l <= l_max; ++l) {
      if (std::abs(j[l]) < 1e-300) {
        reach = l - 1;
        out.truncated = true;
        break;
      }
    }
  }
  out.l_max_returned = reach;
  out.terms.reserve(2 * reach + 1);
  for (int l = -reach; l <= reach; ++l) {
    const int al = std::abs(l);
    double jl = j[al];
    if (l < 0 && al % 2 == 1) jl = -jl;
    out.terms.push_back({l, 2.0 * d.Omega_T1 * jl, d.Omega_0 - d.Omega_T - l * d.Omega_L, d.pair});
  }
  return out;
}

double polarization_coefficient(double Omega_1, double Omega_d, const RelaxationRates& rates) {
  rates.validate();
  const double sat = Omega_1 * Omega_1 / (rates.gamma1 * rates.gamma2);
  const double det = Omega_d / rates.gamma2;
  return sat / (1.0 + det * det + sat);
}

DominantTerm dominant_term(std::span<const MixingTerm> terms, const RelaxationRates& rates) {
  if (terms.empty()) throw std::invalid_argument("no mixing terms");

  DominantTerm best;
  best.term = terms.front();
  best.P = -1.0;
  double second = -1.0;
  for (const auto& t : terms) {
    const double p = polarization_coefficient(t.Omega_1l, t.Omega_dl, rates);
    if (p > best.P) {
      second = best.P;
      best.P = p;
      best.term = t;
    } else if (p > second) {
      second = p;
    }
  }
  if (best.P == 0.0) {
    best.ratio = 1.0;
  } else if (second <= 0.0) {
    best.ratio = std::numeric_limits<double>::infinity();
  } else {
    best.ratio = best.P / second;
  }
  return best;
}

namespace {

double pair_splitting(const StaticFrame& frame, LevelPair pair) {
  const auto d = frame.diagonal();
  return std::abs(d[pair.n2 - 1] - d[pair.n1 - 1]);
}

}  // namespace

DriveDecomposition single_antenna_decomposition(double omega_T1, double omega_T,
                                                const StaticFrame& frame, LevelPair pair) {
  if (!pair.valid()) throw std::invalid_argument("invalid level pair");
  const int a = pair.n1 - 1;
  const int b = pair.n2 - 1;
  // Rotated drive per unit real omega_T; all entries are real multiples.
  const TripletMatrix unit = transform_transverse_drive(cplx(1.0, 0.0), frame).matrix();

  DriveDecomposition d;
  d.pair = pair;
  d.Omega_0 = pair_splitting(frame, pair);
  d.Omega_L1 = std::abs(omega_T1) * std::abs(unit(b, b).real() - unit(a, a).real());
  d.Omega_T1 = 0.5 * std::abs(omega_T1) * std::abs(unit(a, b));
  d.Omega_L = omega_T;
  d.Omega_T = omega_T;
  d.validate();
  return d;
}

DriveDecomposition two_antenna_decomposition(double omega_acz_amp, double Omega_L,
                                             double omega_T1, double Omega_T,
                                             const StaticFrame& frame, LevelPair pair) {
  if (!pair.valid()) throw std::invalid_argument("invalid level pair");
  const int a = pair.n1 - 1;
  const int b = pair.n2 - 1;
  const TripletMatrix lon = transform_longitudinal_drive(1.0, frame);
  const TripletMatrix tra = transform_transverse_drive(cplx(1.0, 0.0), frame).matrix();

  DriveDecomposition d;
  d.pair = pair;
  d.Omega_0 = pair_splitting(frame, pair);
  d.Omega_L1 = std::abs(omega_acz_amp) * std::abs(lon(b, b).real() - lon(a, a).real());
  d.Omega_T1 = 0.5 * std::abs(omega_T1) * std::abs(tra(a, b));
  d.Omega_L = Omega_L;
  d.Omega_T = Omega_T;
  d.validate();
  return d;
}

}  // namespace nvmix

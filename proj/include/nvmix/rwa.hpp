#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nvmix/frame_transform.hpp"

namespace nvmix {

/// Rotated-frame level indices, 1-based, n1 < n2.
struct LevelPair {
  int n1 = 1;
  int n2 = 2;

  bool valid() const { return n1 >= 1 && n2 <= 3 && n1 < n2; }
  bool operator==(const LevelPair&) const = default;
};

/// Two-level reduction of the driven triplet for one level pair:
/// splitting Omega_0 - Omega_L1 cos(Omega_L t) and coupling
/// Omega_T1 exp(i Omega_T t).
struct DriveDecomposition {
  double Omega_0 = 0.0;
  double Omega_L1 = 0.0;
  double Omega_L = 0.0;
  double Omega_T1 = 0.0;
  double Omega_T = 0.0;
  LevelPair pair;

  /// Throws std::invalid_argument on negative amplitudes, non-positive
  /// frequencies, non-finite values or an invalid pair.
  void validate() const;
};

struct MixingTerm {
  int l = 0;
  double Omega_1l = 0.0;  // 2 Omega_T1 J_l(Omega_L1 / Omega_L), signed
  double Omega_dl = 0.0;  // Omega_0 - Omega_T - l Omega_L
  LevelPair pair;
};

struct RelaxationRates {
  double gamma1 = 0.0;  // longitudinal, rad/s
  double gamma2 = 0.0;  // transverse, rad/s

  void validate() const;
};

/// Interaction-frame off-diagonal element omega'_{n',n''} exp(-i phase).
cplx hollow_frame_element(cplx omega_prime_offdiag, double accumulated_phase);

/// Closed form of the integrated splitting, Omega_0 t - (Omega_L1/Omega_L) sin(Omega_L t).
double modulated_phase(const DriveDecomposition& d, double t);

struct SidebandSet {
  std::vector<MixingTerm> terms;  // ordered by l ascending
  /// Set when orders beyond the returned range were dropped because
  /// |J_l| fell below 1e-300.
  bool truncated = false;
  int l_max_returned = 0;
};

/// Sideband terms for l in [-l_max, l_max]. Throws std::invalid_argument for
/// l_max < 0 or an invalid decomposition.
SidebandSet jacobi_anger_sidebands(const DriveDecomposition& d, int l_max);

/// Steady-state saturation (O1^2/g1g2) / (1 + Od^2/g2^2 + O1^2/g1g2), in [0, 1).
double polarization_coefficient(double Omega_1, double Omega_d, const RelaxationRates& rates);

inline constexpr double kRwaQuestionableRatio = 2.0;

struct DominantTerm {
  MixingTerm term;
  double P = 0.0;
  /// Best over second-best P; +inf when only one term has nonzero P,
  /// 1 when every term gives P = 0.
  double ratio = 0.0;

  bool rwa_questionable() const { return ratio < kRwaQuestionableRatio; }
};

/// Term of largest polarization coefficient; ties resolve to the earliest
/// term. Throws std::invalid_argument for an empty list.
DominantTerm dominant_term(std::span<const MixingTerm> terms, const RelaxationRates& rates);

/// One linearly polarized tone omega_T1 cos(omega_T t) on the transverse
/// antenna. Longitudinal modulation comes from the diagonal of the rotated
/// transverse drive, the coupling from the positive-frequency part of its
/// off-diagonal entry. Omega_L = Omega_T = omega_T.
DriveDecomposition single_antenna_decomposition(double omega_T1, double omega_T,
                                                const StaticFrame& frame,
                                                LevelPair pair = {});

/// Longitudinal tone omega_acz_amp cos(Omega_L t) plus transverse tone
/// omega_T1 cos(Omega_T t).
DriveDecomposition two_antenna_decomposition(double omega_acz_amp, double Omega_L,
                                             double omega_T1, double Omega_T,
                                             const StaticFrame& frame, LevelPair pair = {});

}  // namespace nvmix

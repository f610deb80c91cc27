#pragma once

#include <vector>

namespace nvmix {

/// Bessel function of the first kind, integer order, real argument.
///
/// Uses the power series for |x| <= 10 and Miller's backward recurrence,
/// normalized with J_0 + 2 sum J_2k = 1, above that. Absolute accuracy is
/// about 1e-14 for |x| <= 50.
double bessel_j(int n, double x);

/// J_0(x) ... J_n_max(x) in one pass.
std::vector<double> bessel_j_sequence(int n_max, double x);

}  // namespace nvmix

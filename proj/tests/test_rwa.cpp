#include <limits>

#include "doctest.h"
#include "nvmix/bessel.hpp"
#include "nvmix/rwa.hpp"
#include "nvmix/units.hpp"
#include "oracles.hpp"

using namespace nvmix;

namespace {

const RelaxationRates kRates{mhz(0.5), mhz(2.0)};

DriveDecomposition lzs(double ratio) {
  DriveDecomposition d;
  d.Omega_0 = ghz(3.15) + mhz(10.5);
  d.Omega_L = mhz(10.5);
  d.Omega_L1 = ratio * d.Omega_L;
  d.Omega_T1 = mhz(5.6);
  d.Omega_T = ghz(3.15);
  return d;
}

StaticFrame frame_with(double theta, double omega_R0) {
  StaticFrame f;
  f.theta = theta;
  f.omega_R0 = omega_R0;
  f.omega_H = omega_R0 * std::sin(theta);
  f.omega_dch = ghz(5);
  return f;
}

}  // namespace

TEST_CASE("sidebands follow the Jacobi-Anger expansion") {
  const auto d = lzs(2.7);
  const auto s = jacobi_anger_sidebands(d, 12);
  REQUIRE(s.terms.size() == 25);
  CHECK_FALSE(s.truncated);
  for (const auto& t : s.terms) {
    const double ref = 2.0 * d.Omega_T1 * oracle::bessel_integral(t.l, 2.7);
    CHECK(t.Omega_1l == doctest::Approx(ref).scale(d.Omega_T1).epsilon(1e-12));
    CHECK(t.Omega_dl == doctest::Approx(d.Omega_0 - d.Omega_T - t.l * d.Omega_L));
  }
  CHECK(s.terms.front().l == -12);
  CHECK(s.terms.back().l == 12);
}

TEST_CASE("sum rule over sidebands") {
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    const auto d = lzs(x);
    const auto s = jacobi_anger_sidebands(d, 60);
    double sum = 0.0;
    for (const auto& t : s.terms) sum += t.Omega_1l * t.Omega_1l;
    const double ref = 4.0 * d.Omega_T1 * d.Omega_T1;
    CHECK(std::abs(sum - ref) <= 1e-10 * ref);
  }
}

TEST_CASE("no modulation keeps only the carrier") {
  const auto s = jacobi_anger_sidebands(lzs(0.0), 5);
  CHECK_FALSE(s.truncated);
  for (const auto& t : s.terms) {
    if (t.l == 0) CHECK(t.Omega_1l == doctest::Approx(2 * mhz(5.6)));
    else CHECK(t.Omega_1l == 0.0);
  }
}

TEST_CASE("tiny modulation truncates far orders") {
  const auto s = jacobi_anger_sidebands(lzs(1e-6), 200);
  CHECK(s.truncated);
  CHECK(s.l_max_returned < 200);
  CHECK(s.terms.size() == static_cast<size_t>(2 * s.l_max_returned + 1));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(jacobi_anger_sidebands(lzs(1.0), -1), std::invalid_argument);
  auto d = lzs(1.0);
  d.Omega_L = 0.0;
  CHECK_THROWS_AS(jacobi_anger_sidebands(d, 3), std::invalid_argument);
  d = lzs(1.0);
  d.pair = {2, 1};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("polarization coefficient") {
  CHECK(polarization_coefficient(0.0, 0.0, kRates) == 0.0);
  const double s = 1.0;
  const double o1 = std::sqrt(s * kRates.gamma1 * kRates.gamma2);
  CHECK(polarization_coefficient(o1, 0.0, kRates) == doctest::Approx(0.5));
  CHECK(polarization_coefficient(o1, kRates.gamma2, kRates) == doctest::Approx(1.0 / 3.0));
  CHECK(polarization_coefficient(o1, -kRates.gamma2, kRates) ==
        doctest::Approx(polarization_coefficient(o1, kRates.gamma2, kRates)));
  CHECK(polarization_coefficient(1e6 * o1, 0.0, kRates) < 1.0);
  double prev = 0.0;
  for (double a = 0.1; a < 100; a *= 1.5) {
    const double p = polarization_coefficient(a * o1, 3 * kRates.gamma2, kRates);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("dominant term and ratio sentinels") {
  std::vector<MixingTerm> terms = {{-1, mhz(1), mhz(50), {}}, {0, mhz(1), 0.0, {}}, {1, mhz(1), mhz(-50), {}}};
  auto best = dominant_term(terms, kRates);
  CHECK(best.term.l == 0);
  CHECK(best.ratio > 100);
  CHECK_FALSE(best.rwa_questionable());

  terms[0].Omega_dl = 0.0;
  best = dominant_term(terms, kRates);
  CHECK(best.term.l == -1);  // ties go to the earliest term
  CHECK(best.ratio == 1.0);
  CHECK(best.rwa_questionable());

  std::vector<MixingTerm> one = {{0, mhz(1), 0.0, {}}, {1, 0.0, 0.0, {}}};
  CHECK(std::isinf(dominant_term(one, kRates).ratio));

  std::vector<MixingTerm> none = {{0, 0.0, 0.0, {}}};
  best = dominant_term(none, kRates);
  CHECK(best.P == 0.0);
  CHECK(best.ratio == 1.0);

  CHECK_THROWS_AS(dominant_term(std::span<const MixingTerm>{}, kRates), std::invalid_argument);
}

TEST_CASE("interaction frame keeps the coupling magnitude") {
  const cplx w(3.0, -4.0);
  for (double ph : {0.0, 1.0, 17.3}) CHECK(std::abs(hollow_frame_element(w, ph)) == doctest::Approx(5.0));
  CHECK(std::abs(hollow_frame_element(w, kPi / 2) - w * cplx(0, -1)) < 1e-12);
}

TEST_CASE("modulated phase integrates the splitting") {
  const auto d = lzs(3.0);
  const double h = 1e-12;
  for (double t : {0.0, 1.3e-8, 4.4e-7}) {
    const double deriv = (modulated_phase(d, t + h) - modulated_phase(d, t - h)) / (2 * h);
    const double split = d.Omega_0 - d.Omega_L1 * std::cos(d.Omega_L * t);
    CHECK(deriv == doctest::Approx(split).epsilon(1e-5));
  }
  CHECK(modulated_phase(d, 0.0) == 0.0);
}

TEST_CASE("single antenna decomposition of the crossing pair") {
  const double theta = 0.8;
  const auto f = frame_with(theta, mhz(300));
  const double w1 = mhz(40), wt = mhz(145);
  const auto d = single_antenna_decomposition(w1, wt, f);
  CHECK(d.Omega_0 == doctest::Approx(mhz(300)));
  CHECK(d.Omega_L == wt);
  CHECK(d.Omega_T == wt);
  CHECK(d.Omega_L1 == doctest::Approx(std::sqrt(2.0) * w1 * std::sin(theta)));
  CHECK(d.Omega_T1 == doctest::Approx(0.5 * w1 / std::sqrt(2.0) * std::abs(std::cos(theta))));
  // Sign of the input amplitude does not matter.
  const auto neg = single_antenna_decomposition(-w1, wt, f);
  CHECK(neg.Omega_L1 == d.Omega_L1);
}

TEST_CASE("two antenna decomposition") {
  const double theta = 2.2;
  const auto f = frame_with(theta, ghz(1));
  const auto d = two_antenna_decomposition(mhz(30), mhz(10.5), mhz(8), ghz(1), f);
  CHECK(d.Omega_L1 == doctest::Approx(mhz(30) * std::abs(std::cos(theta))));
  CHECK(d.Omega_L == mhz(10.5));
  CHECK(d.Omega_T == ghz(1));
  CHECK(d.Omega_T1 > 0.0);
  const auto d13 = two_antenna_decomposition(mhz(30), mhz(10.5), mhz(8), ghz(1), f, {1, 3});
  CHECK(d13.Omega_0 == doctest::Approx(ghz(5) + 0.5 * ghz(1)));
  CHECK(d13.Omega_L1 == doctest::Approx(mhz(30) * std::abs(1.5 + 0.5 * std::cos(theta))));
  CHECK_THROWS_AS(two_antenna_decomposition(1, 1, 1, 1, f, {3, 3}), std::invalid_argument);
}

TEST_CASE("dominant term is invariant under joint rescaling") {
  const auto s = jacobi_anger_sidebands(lzs(1.7), 10);
  const auto ref = dominant_term(s.terms, kRates);
  for (double c : {0.1, 3.0, 250.0}) {
    auto scaled = s.terms;
    for (auto& t : scaled) {
      t.Omega_1l *= c;
      t.Omega_dl *= c;
    }
    const auto got = dominant_term(scaled, {c * kRates.gamma1, c * kRates.gamma2});
    CHECK(got.term.l == ref.term.l);
    CHECK(got.P == doctest::Approx(ref.P).epsilon(1e-12));
  }
}

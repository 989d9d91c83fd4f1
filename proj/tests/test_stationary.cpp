#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "dimersim/config.hpp"
#include "dimersim/errors.hpp"
#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/stationary.hpp"

using namespace dimersim;

namespace {

Matrix4 random_density(std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Matrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  Matrix4 rho = m * m.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace

TEST_CASE("population bookkeeping") {
  CHECK(n_exc(named_state(NamedState::G)) == doctest::Approx(0.0));
  CHECK(n_exc(named_state(NamedState::S)) == doctest::Approx(1.0));
  CHECK(n_exc(named_state(NamedState::A)) == doctest::Approx(1.0));
  CHECK(n_exc(named_state(NamedState::E)) == doctest::Approx(2.0));

  SystemParams p;  // alpha = 0.3
  std::mt19937 rng(3);
  for (int k = 0; k < 5; ++k) {
    const Matrix4 rho = random_density(rng);
    CHECK(redshifted_emission_rate(rho, p) ==
          doctest::Approx(0.7 * n_exc(rho)).epsilon(1e-12));
  }
}

TEST_CASE("excitation spectrum resolves the coupled resonances") {
  SystemParams p;
  p.set_rabi(4.0);
  p.delta = 5.0;
  p.gamma_star = 0.1;

  AxisSpec axis{-30.0, 30.0, 200, false};
  const std::vector<double> dets = axis.values();
  const double step = dets[1] - dets[0];

  const SpectrumResult res = excitation_spectrum(p, dets, 2);
  REQUIRE(res.values.size() == dets.size());

  const std::vector<Peak> peaks = find_peaks(res.values, 1e-3);
  REQUIRE(peaks.size() == 3);
  // Doorway resonances near -omega12 and +omega12, two-photon line at the
  // centre; all shifted slightly by the drive and the splitting.
  CHECK(std::abs(dets[peaks[0].index] - (-20.0)) <= step);
  CHECK(std::abs(dets[peaks[1].index] - 0.0) <= step);
  CHECK(std::abs(dets[peaks[2].index] - 20.0) <= step);
  CHECK(peaks[0].value == doctest::Approx(0.1573).epsilon(1e-3));
  CHECK(peaks[1].value == doctest::Approx(0.3517).epsilon(1e-3));
  CHECK(peaks[2].value == doctest::Approx(0.5063).epsilon(1e-3));

  // Strong dephasing collapses the structure to a single broad line.
  SystemParams q = p;
  q.gamma_star = 30.0;
  const SpectrumResult broad = excitation_spectrum(q, dets, 2);
  const std::vector<Peak> one = find_peaks(broad.values, 1e-3);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(dets[one[0].index] - 19.447) <= step);
  CHECK(one[0].value == doctest::Approx(0.42148).epsilon(1e-3));

  // The sweep is deterministic across thread counts.
  const SpectrumResult rerun = excitation_spectrum(p, dets, 5);
  for (std::size_t i = 0; i < dets.size(); ++i)
    CHECK(rerun.values[i] == res.values[i]);

  // Map rows match the row-wise sweeps exactly.
  const Eigen::MatrixXd map =
      excitation_spectrum_map(p, dets, {0.1, 30.0}, 3);
  REQUIRE(map.rows() == 2);
  REQUIRE(map.cols() == static_cast<Eigen::Index>(dets.size()));
  for (std::size_t i = 0; i < dets.size(); ++i) {
    CHECK(map(0, i) == res.values[i]);
    CHECK(map(1, i) == broad.values[i]);
  }
}

TEST_CASE("saturation curve crosses from quadratic to linear response") {
  SystemParams p;
  p.delta = 5.0;

  AxisSpec axis{0.05, 50.0, 60, true};
  const std::vector<double> rabis = axis.values();

  p.gamma_star = 0.1;
  const SaturationCurve low = saturation_curve(p, rabis, 2);
  REQUIRE(low.n_exc.size() == rabis.size());
  REQUIRE(low.slope.size() == rabis.size());
  CHECK(low.n_exc.front() < low.n_exc.back());
  // Two-photon response: doubly logarithmic slope approaches 2 against the
  // drive intensity.
  const double max_low = *std::max_element(low.slope.begin(), low.slope.end());
  CHECK(max_low > 1.5);
  CHECK(max_low < 2.05);
  // Saturated tail.
  CHECK(low.slope.back() < 0.2);
  CHECK(low.n_exc.back() > 0.8);

  p.gamma_star = 30.0;
  const SaturationCurve high = saturation_curve(p, rabis, 2);
  const double max_high =
      *std::max_element(high.slope.begin(), high.slope.end());
  // Dephasing above threshold restores ordinary linear response.
  CHECK(max_high < 1.2);
  CHECK(max_high > 0.8);
}

TEST_CASE("equal-time photon correlation") {
  // From |ee> exactly one photon pair is emitted into any direction.
  for (double phi : {0.0, 0.9}) {
    CHECK(g2_zero(named_state(NamedState::E), DetectionGeometry{phi}) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // No detected intensity in the ground state.
  CHECK_THROWS_AS(g2_zero(named_state(NamedState::G), DetectionGeometry{}),
                  UndefinedCorrelation);

  // Matrix-element form agrees with the operator form for phi = 0.
  std::mt19937 rng(17);
  for (int k = 0; k < 5; ++k) {
    const Matrix4 rho = random_density(rng);
    CHECK(g2_zero(rho, DetectionGeometry{}) ==
          doctest::Approx(g2_zero_population_form(rho)).epsilon(1e-12));
  }
}

TEST_CASE("correlation map reference points") {
  SystemParams p;
  const std::vector<double> rabis{0.1, 10.0};
  const std::vector<double> gss{0.1, 100.0};

  const Eigen::MatrixXd two =
      g2_zero_map(p, rabis, gss, Excitation::two_photon, 2);
  REQUIRE(two.rows() == 2);
  REQUIRE(two.cols() == 2);
  // Weak drive, weak dephasing: giant pair bunching.
  CHECK(two(0, 0) == doctest::Approx(331.26).epsilon(1e-3));
  // Saturation or strong dephasing wash the correlation out to ~1.
  CHECK(two(0, 1) == doctest::Approx(1.0322).epsilon(1e-3));
  CHECK(two(1, 0) == doctest::Approx(0.9921).epsilon(1e-3));
  CHECK(two(1, 1) == doctest::Approx(0.9953).epsilon(1e-3));

  const Eigen::MatrixXd sup =
      g2_zero_map(p, {0.1}, {0.1}, Excitation::superradiant, 1);
  // Driving the symmetric line antibunches the emission strongly.
  CHECK(sup(0, 0) == doctest::Approx(3.089e-4).epsilon(1e-2));
}

TEST_CASE("critical dephasing and drive strengths") {
  SystemParams p;  // omega12 = 20, gamma0 = 1
  CHECK(threshold_gamma_star(p, Excitation::two_photon) ==
        doctest::Approx(std::cbrt(1600.0)).epsilon(1e-14));
  CHECK(threshold_gamma_star(p, Excitation::superradiant) ==
        doctest::Approx(80.0).epsilon(1e-14));
  CHECK(threshold_rabi(p, Excitation::two_photon) ==
        doctest::Approx(std::sqrt(20.0)).epsilon(1e-14));
  CHECK(threshold_rabi(p, Excitation::superradiant) ==
        doctest::Approx(40.0).epsilon(1e-14));

  // Rates scale with gamma0 as rate^(1/3) * amplitude^(2/3) style powers.
  SystemParams q = p;
  q.gamma0 = 2.0;
  CHECK(threshold_gamma_star(q, Excitation::two_photon) ==
        doctest::Approx(std::cbrt(3200.0)).epsilon(1e-14));
  CHECK(threshold_rabi(q, Excitation::two_photon) ==
        doctest::Approx(std::sqrt(40.0)).epsilon(1e-14));

  SystemParams zero = p;
  zero.omega12 = 0.0;
  CHECK_THROWS_AS(threshold_gamma_star(zero, Excitation::two_photon),
                  InvalidParameter);
  CHECK_THROWS_AS(threshold_rabi(zero, Excitation::superradiant),
                  InvalidParameter);
}

TEST_CASE("peak finding") {
  const std::vector<double> v{0.0, 1.0, 0.0, 2.0, 0.0};
  const std::vector<Peak> all = find_peaks(v, 0.0);
  REQUIRE(all.size() == 2);
  CHECK(all[0].index == 1);
  CHECK(all[0].prominence == doctest::Approx(1.0));
  CHECK(all[1].index == 3);
  CHECK(all[1].prominence == doctest::Approx(2.0));

  const std::vector<Peak> tall = find_peaks(v, 1.5);
  REQUIRE(tall.size() == 1);
  CHECK(tall[0].index == 3);
  CHECK(tall[0].value == doctest::Approx(2.0));

  // Plateaus count once, endpoints never.
  CHECK(find_peaks({0.0, 1.0, 1.0, 0.0}, 0.5).size() == 1);
  CHECK(find_peaks({2.0, 1.0, 2.0}, 0.1).empty());
  CHECK(find_peaks({1.0, 2.0}, 0.1).empty());
  CHECK(find_peaks({}, 0.1).empty());
}

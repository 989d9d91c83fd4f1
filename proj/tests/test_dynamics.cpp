#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "dimersim/coupling.hpp"
#include "dimersim/dynamics.hpp"
#include "dimersim/errors.hpp"
#include "dimersim/fits.hpp"
#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"

using namespace dimersim;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

}  // namespace

TEST_CASE("doorway states decay at the collective rates") {
  SystemParams p;  // gamma12 = 0.3, gamma_star = 0
  const std::vector<double> ts = linspace(0.0, 5.0, 26);

  const std::vector<double> from_s =
      n_exc_trajectory(p, named_state(NamedState::S), ts);
  const std::vector<double> from_a =
      n_exc_trajectory(p, named_state(NamedState::A), ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(std::abs(from_s[i] - std::exp(-1.3 * ts[i])) < 1e-9);
    CHECK(std::abs(from_a[i] - std::exp(-0.7 * ts[i])) < 1e-9);
  }
}

TEST_CASE("first-order coherence reduces to the intensity at zero delay") {
  SystemParams p;
  p.gamma_star = 0.5;
  const Matrix4 rho0 = named_state(NamedState::E);
  const DetectionGeometry geom{0.8};
  const double t = 0.9;

  const SpectralDecomposition dec = spectral_decompose(build_liouvillian(p));
  const Matrix4 rho_t = propagate_spectral(dec, rho0, t);
  const Matrix4 d = detection_operator(geom);
  const Complex direct = (d.adjoint() * d * rho_t).trace();
  CHECK(std::abs(g1(p, rho0, geom, t, 0.0) - direct) < 1e-12);
}

TEST_CASE("subradiant doorway emits a narrow red line") {
  SystemParams p;  // gamma_star = 0
  const DetectionGeometry geom{1.5707963267948966};  // makes |A> visible
  const std::vector<double> omegas = linspace(-21.0, -19.0, 1001);
  const double dw = omegas[1] - omegas[0];

  const Spectrogram sg = g1_spectrum(p, named_state(NamedState::A), geom,
                                     {0.0}, omegas);
  REQUIRE(sg.values.rows() == 1);
  REQUIRE(sg.values.cols() == static_cast<Eigen::Index>(omegas.size()));

  int imax = 0;
  sg.values.row(0).maxCoeff(&imax);
  CHECK(std::abs(omegas[imax] - (-20.0)) <= dw);
  CHECK(sg.values(0, imax) > 0.0);

  // Full width at half maximum of the subradiant line: gamma0 - gamma12.
  const double half = 0.5 * sg.values(0, imax);
  auto cross = [&](int from, int dir) {
    int i = from;
    while (sg.values(0, i + dir) > half) i += dir;
    // Linear interpolation between i and i+dir.
    const double y0 = sg.values(0, i), y1 = sg.values(0, i + dir);
    return omegas[i] + dir * dw * (y0 - half) / (y0 - y1);
  };
  const double fwhm = cross(imax, +1) - cross(imax, -1);
  CHECK(fwhm == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("resolvent and quadrature spectra agree") {
  SystemParams p;
  p.gamma_star = 2.0;
  const Matrix4 rho0 = named_state(NamedState::A);
  const DetectionGeometry geom{1.5707963267948966};
  const std::vector<double> ts{0.5};
  const std::vector<double> omegas{-20.4, -20.0, -19.6, 0.0, 19.6, 20.0};

  const Spectrogram res =
      g1_spectrum(p, rho0, geom, ts, omegas, SpectrumMethod::kResolvent);
  const Spectrogram quad =
      g1_spectrum(p, rho0, geom, ts, omegas, SpectrumMethod::kQuadrature);
  CHECK((res.values - quad.values).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("ill-conditioned decompositions reroute the spectrum") {
  SystemParams p;
  p.gamma_star = 0.91;  // doorway rates coalesce for gamma12 = 0.3
  const Matrix4 rho0 = named_state(NamedState::E);
  CHECK_THROWS_AS(g1_spectrum(p, rho0, {}, {0.0}, {-20.0},
                              SpectrumMethod::kResolvent),
                  FlaggedDecomposition);
  // kAuto silently switches to the quadrature path.
  const Spectrogram sg = g1_spectrum(p, rho0, {}, {0.0}, {-20.0, 20.0});
  CHECK(std::isfinite(sg.values(0, 0)));
  CHECK(std::isfinite(sg.values(0, 1)));
}

TEST_CASE("two-time photon correlation from the doubly excited state") {
  SystemParams p;  // gamma_star = 0
  const Matrix4 rho0 = named_state(NamedState::E);

  CHECK(g2_time(p, rho0, {}, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-9));

  // tau = 0 limit is the equal-time population form.
  const double t = 0.3;
  const SpectralDecomposition dec = spectral_decompose(build_liouvillian(p));
  const Matrix4 rho_t = propagate_spectral(dec, rho0, t);
  CHECK(g2_time(p, rho0, {}, t, 0.0) ==
        doctest::Approx(g2_equal_time_population_form(rho_t, {}))
            .epsilon(1e-9));

  CHECK_THROWS_AS(g2_time(p, named_state(NamedState::G), {}, 0.0, 1.0),
                  UndefinedCorrelation);

  // QRT numerator stays real: correlation equals its complex-conjugate path.
  const Matrix4 d = detection_operator(DetectionGeometry{});
  const Matrix4 dd = d.adjoint();
  const Complex num = three_op_correlation(dec, rho0, dd, Matrix4(dd * d), d,
                                           0.4, 1.1);
  CHECK(std::abs(num.imag()) < 1e-10);
  CHECK(num.real() >= -1e-10);
}

TEST_CASE("closed-form pair cascade matches the regression theorem") {
  const std::vector<double> ts{0.0, 0.4, 1.2, 2.0};
  const std::vector<double> taus{0.0, 0.3, 0.9, 1.7, 2.5, 3.3};
  const Matrix4 rho0 = named_state(NamedState::E);

  for (double gs : {0.0, 0.5, 2.0}) {
    for (double phi : {0.0, 0.222278875378}) {
      CAPTURE(gs);
      CAPTURE(phi);
      SystemParams p;
      p.gamma_star = gs;
      const DetectionGeometry geom{phi};
      const Matrix4 d = detection_operator(geom);
      const Matrix4 dd = d.adjoint();
      const SpectralDecomposition dec =
          spectral_decompose(build_liouvillian(p));
      for (double t : ts) {
        for (double tau : taus) {
          const double direct =
              three_op_correlation(dec, rho0, dd, Matrix4(dd * d), d, t, tau)
                  .real();
          const double closed = closed_form_G2(p, geom, t, tau);
          CHECK(std::abs(closed - direct) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("closed-form cascade edge cases") {
  SystemParams p;  // gamma_star = 0, gamma12 = 0.3
  // Broadside detection sees a single decaying branch: exp(-2t - 1.3 tau).
  CHECK(closed_form_G2(p, {}, 0.7, 1.1) ==
        doctest::Approx(std::exp(-1.4 - 1.3 * 1.1)).epsilon(1e-12));

  std::vector<double> taus = linspace(8.0, 12.0, 41);
  std::vector<double> vals(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i)
    vals[i] = closed_form_G2(p, {}, 0.0, taus[i]);
  CHECK(fits::log_slope(taus, vals, 8.0, 12.0) ==
        doctest::Approx(-1.3).epsilon(1e-9));

  SystemParams uncoupled = p;
  uncoupled.gamma12 = 0.0;
  CHECK_THROWS_AS(closed_form_G2(uncoupled, {}, 0.0, 1.0), SingularFormula);

  SystemParams driven = p;
  driven.set_rabi(1.0);
  CHECK_THROWS_AS(closed_form_G2(driven, {}, 0.0, 1.0), InvalidParameter);

  SystemParams split = p;
  split.delta = 1.0;
  CHECK_THROWS_AS(closed_form_G2(split, {}, 0.0, 1.0), InvalidParameter);
}

TEST_CASE("analytic eigensystem of the undriven pair") {
  SystemParams p;
  p.gamma_star = 2.0;  // gamma12 = 0.3
  const AnalyticEigensystem sys = analytic_eigensystem(p);

  CHECK(std::abs(sys.ground.eigenvalue) < 1e-15);
  CHECK(std::abs(sys.doubly_excited.eigenvalue - Complex(-2.0)) < 1e-15);
  CHECK(std::abs(sys.symmetric.eigenvalue - Complex(-3.044030650891055)) <
        1e-12);
  CHECK(std::abs(sys.antisymmetric.eigenvalue - Complex(-0.9559693491089449)) <
        1e-12);

  const Superoperator L = build_liouvillian(p);
  const EigenTriple* triples[] = {&sys.ground, &sys.symmetric,
                                  &sys.antisymmetric, &sys.doubly_excited};
  for (const EigenTriple* tr : triples) {
    const SuperVector r = vec(tr->right);
    CHECK((L.m * r - tr->eigenvalue * r).norm() <= 1e-12 * r.norm());
    const SuperVector l = vec(tr->left);
    CHECK((L.m.adjoint() * l - std::conj(tr->eigenvalue) * l).norm() <=
          1e-12 * l.norm());
  }
  for (const EigenTriple* a : triples) {
    for (const EigenTriple* b : triples) {
      const Complex overlap = (a->left.adjoint() * b->right).trace();
      CHECK(std::abs(overlap - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }

  // Mode weights of the cascade from |ee>.
  const Matrix4 rho0 = named_state(NamedState::E);
  CHECK((sys.symmetric.left.adjoint() * rho0).trace().real() ==
        doctest::Approx(-0.42792693482917404).epsilon(1e-10));
  CHECK((sys.antisymmetric.left.adjoint() * rho0).trace().real() ==
        doctest::Approx(6.2387397318374855).epsilon(1e-10));

  // The four population modes close under the cascade: their sum tracks the
  // integrated evolution.
  const std::vector<double> ts{0.0, 0.4, 1.3, 2.7};
  const std::vector<Matrix4> stepped = propagate_ode(L, rho0, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Matrix4 recon = Matrix4::Zero();
    for (const EigenTriple* tr : triples)
      recon += std::exp(tr->eigenvalue * ts[i]) *
               (tr->left.adjoint() * rho0).trace() * tr->right;
    CHECK((recon - stepped[i]).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("strong dephasing reshapes the doorway modes") {
  SystemParams p;
  p.gamma_star = 500.0;
  const AnalyticEigensystem sys = analytic_eigensystem(p);
  // Fast mode becomes pure single-excitation coherence, slow mode pure
  // population.
  CHECK(std::abs(sys.symmetric.right(kGE, kEG)) >
        100.0 * std::abs(sys.symmetric.right(kGE, kGE)));
  CHECK(std::abs(sys.antisymmetric.right(kGE, kGE)) >
        100.0 * std::abs(sys.antisymmetric.right(kGE, kEG)));
}

TEST_CASE("analytic eigensystem rejects unsupported parameters") {
  SystemParams ep;
  ep.gamma_star = 0.91;  // exactly the coalescence point for gamma12 = 0.3
  CHECK_THROWS_AS(analytic_eigensystem(ep), SingularFormula);

  SystemParams uncoupled;
  uncoupled.gamma12 = 0.0;
  CHECK_THROWS_AS(analytic_eigensystem(uncoupled), SingularFormula);

  SystemParams driven;
  driven.set_rabi(0.5);
  CHECK_THROWS_AS(analytic_eigensystem(driven), InvalidParameter);

  SystemParams split;
  split.delta = 2.0;
  CHECK_THROWS_AS(analytic_eigensystem(split), InvalidParameter);
}

TEST_CASE("directional correlations fade with dephasing") {
  // Coupling taken from the actual geometry, detection along the pair axis
  // versus broadside.
  const Geometry config = Geometry::h_config(0.03);
  const double sep = distance_for_coupling(20.0, config, 0.3, 1.0);
  const CouplingRates rates =
      coupling_rates(Geometry::h_config(sep), 0.3, 1.0);
  const double phi_par = 2.0 * 3.141592653589793 * sep;

  const std::vector<double> ts = linspace(0.0, 10.0, 401);
  const Matrix4 rho0 = named_state(NamedState::E);

  std::vector<double> contrast;
  for (double gs : {0.0, 1.0, 5.0, 50.0}) {
    SystemParams p;
    p.omega12 = rates.omega12;
    p.gamma12 = rates.gamma12;
    p.gamma_star = gs;
    const SpectralDecomposition dec = spectral_decompose(build_liouvillian(p));
    REQUIRE(!dec.flagged);
    double worst = 0.0;
    for (double t : ts) {
      const Matrix4 rho_t = propagate_spectral(dec, rho0, t);
      const double perp = g2_equal_time_population_form(rho_t, {});
      const double par =
          g2_equal_time_population_form(rho_t, DetectionGeometry{phi_par});
      worst = std::max(worst, std::abs(par - perp));
    }
    contrast.push_back(worst);
  }
  REQUIRE(contrast.size() == 4);
  CHECK(contrast[0] > contrast[1]);
  CHECK(contrast[1] > contrast[2]);
  CHECK(contrast[2] > contrast[3]);
  CHECK(contrast[0] > 100.0 * contrast[3]);
}

TEST_CASE("exponential fitting") {
  const std::vector<double> ts = linspace(0.0, 6.0, 61);

  std::vector<double> mono(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    mono[i] = 2.5 * std::exp(-0.8 * ts[i]);
  const fits::ExpFit m = fits::fit_mono_exponential(ts, mono);
  CHECK(m.rate == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(m.amplitude == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(m.rms < 1e-10);

  CHECK(fits::log_slope(ts, mono, 1.0, 5.0) ==
        doctest::Approx(-0.8).epsilon(1e-10));
  CHECK_THROWS_AS(fits::log_slope(ts, mono, 10.0, 12.0), InvalidParameter);

  std::vector<double> bi(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    bi[i] = 0.8 * std::exp(-0.5 * ts[i]) + 0.2 * std::exp(-3.0 * ts[i]);
  const fits::BiExpFit b = fits::fit_bi_exponential(ts, bi, 0.3, 5.0);
  CHECK(b.rate1 == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(b.rate2 == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(b.amp1 == doctest::Approx(0.8).epsilon(1e-5));
  CHECK(b.amp2 == doctest::Approx(0.2).epsilon(1e-5));
  CHECK(b.rms < 1e-8);
}

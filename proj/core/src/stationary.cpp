#include "dimersim/stationary.hpp"

#include <cmath>

#include "dimersim/errors.hpp"
#include "dimersim/parallel.hpp"

namespace dimersim {

double n_exc(const Matrix4& rho) {
  return (2.0 * rho(kEE, kEE) + rho(kEG, kEG) + rho(kGE, kGE)).real();
}

double redshifted_emission_rate(const Matrix4& rho, const SystemParams& p) {
  // Sideband part of the decay dissipator: uncorrelated decay of each
  // emitter at rate (1-alpha)*gamma0. The emission rate is the ground
  // state refill rate plus the drain rate of the doubly excited level,
  // which counts each cascade photon exactly once.
  const double g_vib = (1.0 - p.alpha) * p.gamma0;
  Matrix4 j = Matrix4::Zero();
  for (int a = 1; a <= 2; ++a) {
    const Matrix4 s = sigma(a);
    const Matrix4 nd = s.adjoint() * s;
    j += (g_vib / 2.0) * (2.0 * s * rho * s.adjoint() - nd * rho - rho * nd);
  }
  return (j(kGG, kGG) - j(kEE, kEE)).real();
}

namespace {

double steady_n_exc(SystemParams p, double detuning) {
  p.laser_detuning = detuning;
  return n_exc(steady_state(build_liouvillian(p)));
}

}  // namespace

SpectrumResult excitation_spectrum(const SystemParams& p,
                                   const std::vector<double>& detunings,
                                   int threads) {
  SpectrumResult out;
  out.axis = detunings;
  out.values.resize(detunings.size());
  out.params = p;
  parallel_for(static_cast<int>(detunings.size()), threads,
               [&](int i) { out.values[i] = steady_n_exc(p, detunings[i]); });
  return out;
}

Eigen::MatrixXd excitation_spectrum_map(const SystemParams& p,
                                        const std::vector<double>& detunings,
                                        const std::vector<double>& gamma_stars,
                                        int threads) {
  const int nd = static_cast<int>(detunings.size());
  const int ng = static_cast<int>(gamma_stars.size());
  Eigen::MatrixXd map(ng, nd);
  parallel_for(ng * nd, threads, [&](int idx) {
    const int row = idx / nd, col = idx % nd;
    SystemParams q = p;
    q.gamma_star = gamma_stars[row];
    map(row, col) = steady_n_exc(q, detunings[col]);
  });
  return map;
}

SaturationCurve saturation_curve(const SystemParams& p,
                                 const std::vector<double>& rabis,
                                 int threads) {
  const int n = static_cast<int>(rabis.size());
  SaturationCurve out;
  out.rabi = rabis;
  out.n_exc.resize(n);
  out.params = p;
  parallel_for(n, threads, [&](int i) {
    SystemParams q = p;
    q.set_rabi(rabis[i]);
    out.n_exc[i] = n_exc(steady_state(build_liouvillian(q)));
  });
  // Local log-log slope against the intensity x = rabi^2.
  out.slope.assign(n, 0.0);
  auto lx = [&](int i) { return 2.0 * std::log(rabis[i]); };
  auto ly = [&](int i) { return std::log(out.n_exc[i]); };
  for (int i = 0; i < n; ++i) {
    const int a = std::max(0, i - 1), b = std::min(n - 1, i + 1);
    out.slope[i] = a == b ? 0.0 : (ly(b) - ly(a)) / (lx(b) - lx(a));
  }
  return out;
}

double g2_zero(const Matrix4& rho, const DetectionGeometry& geom) {
  const Matrix4 d = detection_operator(geom);
  const Matrix4 dd = d.adjoint();
  const double intensity = (dd * d * rho).trace().real();
  if (!(intensity * intensity > 1e-30))
    throw UndefinedCorrelation("intensity too small to normalize g2(0)");
  const double pairs = (dd * dd * d * d * rho).trace().real();
  return pairs / (intensity * intensity);
}

double g2_zero_population_form(const Matrix4& rho) {
  const double denom = (2.0 * rho(kEE, kEE) + rho(kEG, kEG) + rho(kGE, kGE) +
                        rho(kEG, kGE) + rho(kGE, kEG))
                           .real();
  if (!(denom * denom > 4.0 * 1e-30))
    throw UndefinedCorrelation("intensity too small to normalize g2(0)");
  return 4.0 * rho(kEE, kEE).real() / (denom * denom);
}

Eigen::MatrixXd g2_zero_map(const SystemParams& p,
                            const std::vector<double>& rabis,
                            const std::vector<double>& gamma_stars,
                            Excitation excitation, int threads) {
  const int nr = static_cast<int>(rabis.size());
  const int ng = static_cast<int>(gamma_stars.size());
  Eigen::MatrixXd map(ng, nr);
  parallel_for(ng * nr, threads, [&](int idx) {
    const int row = idx / nr, col = idx % nr;
    SystemParams q = p;
    q.gamma_star = gamma_stars[row];
    q.set_rabi(rabis[col]);
    q.laser_detuning =
        excitation == Excitation::superradiant ? q.omega12 : 0.0;
    map(row, col) = g2_zero(steady_state(build_liouvillian(q)), {});
  });
  return map;
}

double threshold_gamma_star(const SystemParams& p, Excitation excitation) {
  if (p.omega12 == 0.0)
    throw InvalidParameter("thresholds require omega12 != 0");
  if (excitation == Excitation::two_photon)
    return std::cbrt(4.0 * p.omega12 * p.omega12 * p.gamma0);
  return 4.0 * std::abs(p.omega12);
}

double threshold_rabi(const SystemParams& p, Excitation excitation) {
  if (p.omega12 == 0.0)
    throw InvalidParameter("thresholds require omega12 != 0");
  if (excitation == Excitation::two_photon)
    return std::sqrt(std::abs(p.omega12) * p.gamma0);
  return 2.0 * std::abs(p.omega12);
}

std::vector<Peak> find_peaks(const std::vector<double>& values,
                             double min_prominence) {
  std::vector<Peak> peaks;
  const int n = static_cast<int>(values.size());
  for (int i = 1; i + 1 < n; ++i) {
    if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
    // Valley floor on each side, out to the first higher point or the end.
    double left_floor = values[i], right_floor = values[i];
    for (int j = i - 1; j >= 0; --j) {
      left_floor = std::min(left_floor, values[j]);
      if (values[j] > values[i]) break;
    }
    for (int j = i + 1; j < n; ++j) {
      right_floor = std::min(right_floor, values[j]);
      if (values[j] > values[i]) break;
    }
    const double prominence = values[i] - std::max(left_floor, right_floor);
    if (prominence >= min_prominence)
      peaks.push_back({i, values[i], prominence});
  }
  return peaks;
}

}  // namespace dimersim

#include "dimersim/analytic.hpp"

#include <cmath>
#include <limits>

#include "dimersim/errors.hpp"
#include "dimersim/liouvillian.hpp"

namespace dimersim::analytic {

namespace {

double equal_rabi(const SystemParams& p) {
  if (p.rabi[0] != p.rabi[1])
    throw InvalidParameter("closed form assumes equal drive amplitudes");
  return p.rabi[0];
}

}  // namespace

double lorentzian_S(const SystemParams& p, double omega) {
  const double g0 = p.gamma0, gs = p.gamma_star, g12 = p.gamma12;
  const double r = equal_rabi(p);
  const double a = 4.0 * r * r * (g0 + 0.75 * gs - g12) * (g0 + gs + g12);
  const double b = 4.0 * (omega - p.omega12) * (omega - p.omega12) *
                   (g0 * g0 + g0 * gs - g12 * g12);
  const double c = (g0 + gs + g12) * (g0 + gs + g12) *
                   (g0 * g0 + g0 * gs - g12 * g12);
  return 2.0 * r * r * (g0 + gs - g12) * (g0 + gs + g12) / (a + b + c);
}

std::vector<double> lorentzian_S(const SystemParams& p,
                                 const std::vector<double>& omegas) {
  std::vector<double> out(omegas.size());
  for (size_t i = 0; i < omegas.size(); ++i) out[i] = lorentzian_S(p, omegas[i]);
  return out;
}

double lorentzian_S_weak(const SystemParams& p, double omega) {
  const double g0 = p.gamma0, gs = p.gamma_star, g12 = p.gamma12;
  const double r = equal_rabi(p);
  const double b = 4.0 * (omega - p.omega12) * (omega - p.omega12) *
                   (g0 * g0 + g0 * gs - g12 * g12);
  const double c = (g0 + gs + g12) * (g0 + gs + g12) *
                   (g0 * g0 + g0 * gs - g12 * g12);
  return 2.0 * r * r * (g0 + gs - g12) * (g0 + gs + g12) / (b + c);
}

double lorentzian_S_peak(const SystemParams& p) {
  const double g0 = p.gamma0, gs = p.gamma_star, g12 = p.gamma12;
  const double r = equal_rabi(p);
  return 2.0 * r * r * (g0 + gs - g12) /
         ((g0 + gs + g12) * (g0 * g0 + g0 * gs - g12 * g12));
}

double lorentzian_S_fwhm(const SystemParams& p) {
  return p.gamma0 + p.gamma_star + p.gamma12;
}

double lorentzian_E_amplitude(const SystemParams& p) {
  const double x = equal_rabi(p) / p.gamma0;
  const double y = p.omega12 / p.gamma0;
  const double x2 = x * x;
  return 2.0 * (x2 + 2.0 * x2 * x2) / (4.0 * (x2 + x2 * x2 + y * y));
}

DriveRegime classify_drive_regime(const SystemParams& p) {
  const double x = std::abs(equal_rabi(p)) / p.gamma0;
  const double y = std::abs(p.omega12) / p.gamma0;
  if (x >= y) return DriveRegime::saturated;
  if (x >= 1.0) return DriveRegime::quadratic;
  return DriveRegime::linear;
}

SaturationExpansion saturation_expansion_coefficients(const SystemParams& p) {
  const double g0 = p.gamma0, gs = p.gamma_star, g12 = p.gamma12;
  const double w2 = p.omega12 * p.omega12;
  SaturationExpansion out{};
  out.linear = 2.0 * (g0 + gs + g12) * (g0 + gs - g12) /
               ((g0 * g0 + g0 * gs - g12 * g12) *
                (4.0 * w2 + (g0 + gs + g12) * (g0 + gs + g12)));
  if (gs == 0.0) {
    out.quadratic = w2 == 0.0 ? 0.0
                              : std::numeric_limits<double>::infinity();
  } else {
    const double band = 4.0 * w2 + gs * gs;
    out.quadratic =
        4.0 * (4.0 * w2 * g0 - gs * gs * gs) / (g0 * g0 * gs * band * band);
  }
  return out;
}

double quadratic_coefficient_numeric(const SystemParams& p, double probe_lo,
                                     double probe_hi) {
  if (!(probe_lo > 0 && probe_hi > probe_lo))
    throw InvalidParameter("need 0 < probe_lo < probe_hi");
  auto population = [&](double r) {
    SystemParams q = p;
    q.set_rabi(r);
    q.laser_detuning = 0.0;
    return n_exc(steady_state(build_liouvillian(q)));
  };
  const double x1 = probe_lo * probe_lo, x2 = probe_hi * probe_hi;
  const double n1 = population(probe_lo), n2 = population(probe_hi);
  return (n2 / x2 - n1 / x1) / (x2 - x1);
}

double quadratic_flip_gamma_star(const SystemParams& p, double lo, double hi) {
  auto coeff = [&](double gs) {
    SystemParams q = p;
    q.gamma_star = gs;
    return quadratic_coefficient_numeric(q);
  };
  double flo = coeff(lo), fhi = coeff(hi);
  if ((flo > 0) == (fhi > 0))
    throw TargetNotAchievable("quadratic coefficient does not change sign");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = coeff(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TwoPhotonPopulations exact_populations_two_photon(const SystemParams& p) {
  if (p.gamma_star != 0.0 || p.delta != 0.0 || p.laser_detuning != 0.0)
    throw InvalidParameter(
        "closed form requires gamma_star = delta = laser_detuning = 0");
  const double g0 = p.gamma0, g12 = p.gamma12;
  const double r2 = equal_rabi(p) * equal_rabi(p);
  const double den =
      4.0 * r2 * r2 + g0 * g0 * ((g0 + g12) * (g0 + g12) + 4.0 * r2 +
                                 4.0 * p.omega12 * p.omega12);
  return {r2 * r2 / den, (g0 * g0 * r2 + 2.0 * r2 * r2) / den};
}

double superradiant_g2_zero(const SystemParams& p) {
  const double r2 = equal_rabi(p) * equal_rabi(p);
  const double w2 = p.omega12 * p.omega12;
  const double gp = p.gamma0 + p.gamma12;
  const double band = r2 + 4.0 * w2;
  return (r2 * band + gp * gp * w2) / (band * band);
}

}  // namespace dimersim::analytic

#include "dimersim/coupling.hpp"

#include <cmath>
#include <numbers>

#include "dimersim/errors.hpp"

namespace dimersim {

Geometry Geometry::h_config(double separation_over_lambda) {
  Geometry g;
  g.separation_over_lambda = separation_over_lambda;
  return g;
}

void Geometry::validate() const {
  if (!(separation_over_lambda > 0) || !std::isfinite(separation_over_lambda))
    throw InvalidParameter("separation must be positive and finite");
  for (const auto* v : {&dipole1, &dipole2, &axis})
    if (std::abs(v->norm() - 1.0) > 1e-12)
      throw InvalidParameter("orientation vectors must be unit length");
}

Complex green_scalar(const Geometry& geom, double alpha, double gamma0) {
  geom.validate();
  const double kr = 2.0 * std::numbers::pi * geom.separation_over_lambda;
  if (!(kr > 0)) throw InvalidParameter("kr must be positive");
  const Complex i(0.0, 1.0);
  const Complex phase = std::exp(i * kr) / kr;
  const Complex iso = 1.0 + i / kr - 1.0 / (kr * kr);
  const Complex axial = -1.0 - 3.0 * i / kr + 3.0 / (kr * kr);
  const double d1d2 = geom.dipole1.dot(geom.dipole2);
  const double d1r = geom.dipole1.dot(geom.axis);
  const double d2r = geom.dipole2.dot(geom.axis);
  return -0.75 * alpha * gamma0 * phase * (iso * d1d2 + axial * d1r * d2r);
}

CouplingRates coupling_rates(Complex g) {
  return {g.real(), -2.0 * g.imag()};
}

CouplingRates coupling_rates(const Geometry& geom, double alpha,
                             double gamma0) {
  return coupling_rates(green_scalar(geom, alpha, gamma0));
}

double distance_for_coupling(double target_omega12, const Geometry& config,
                             double alpha, double gamma0, double r_min,
                             double r_max) {
  if (!(r_min > 0) || !(r_max > r_min))
    throw InvalidParameter("need 0 < r_min < r_max");
  Geometry g = config;
  auto f = [&](double r) {
    g.separation_over_lambda = r;
    return green_scalar(g, alpha, gamma0).real() - target_omega12;
  };
  double lo = r_min, hi = r_max;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw TargetNotAchievable("coupling target not bracketed on (" +
                              std::to_string(r_min) + ", " +
                              std::to_string(r_max) + ")");
  // Bisection to near machine precision; ~60 halvings suffice.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
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

}  // namespace dimersim

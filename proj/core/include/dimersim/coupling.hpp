#pragma once

#include <Eigen/Dense>

#include "dimersim/types.hpp"

namespace dimersim {

// Relative geometry of the emitter pair. All lengths are in units of the
// transition wavelength lambda.
struct Geometry {
  double separation_over_lambda = 0.0355;  // r / lambda, > 0
  Eigen::Vector3d dipole1{0.0, 0.0, 1.0};  // unit dipole orientation, emitter 1
  Eigen::Vector3d dipole2{0.0, 0.0, 1.0};  // unit dipole orientation, emitter 2
  Eigen::Vector3d axis{1.0, 0.0, 0.0};     // unit vector from emitter 1 to 2

  // Parallel dipoles perpendicular to the pair axis.
  static Geometry h_config(double separation_over_lambda);

  // Throws InvalidParameter on non-unit vectors or non-positive separation.
  void validate() const;
};

// Free-space electromagnetic dyadic contracted with the two dipole
// orientations, scaled so that omega12 = Re(G) and gamma12 = -2 Im(G).
// Contains the full 1/kr, 1/(kr)^2 and 1/(kr)^3 dependence.
Complex green_scalar(const Geometry& geom, double alpha, double gamma0);

struct CouplingRates {
  double omega12;
  double gamma12;
};

// (omega12, gamma12) from the scalar coupling: Re and -2 Im.
CouplingRates coupling_rates(Complex g);
CouplingRates coupling_rates(const Geometry& geom, double alpha, double gamma0);

// Inverse problem: the separation r/lambda in (r_min, r_max) at which
// Re(G) equals target_omega12, found by bisection on a bracketing pair.
// Throws TargetNotAchievable when the bracket shows no sign change.
double distance_for_coupling(double target_omega12, const Geometry& config,
                             double alpha, double gamma0, double r_min = 1e-4,
                             double r_max = 1.0);

}  // namespace dimersim

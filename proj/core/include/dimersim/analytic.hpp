#pragma once

#include <vector>

#include "dimersim/model.hpp"
#include "dimersim/stationary.hpp"

// Closed-form steady-state expressions, each valid only in the regime
// stated on the function. They are never substituted for solver output;
// comparisons against the numeric steady state live in the tests.
namespace dimersim::analytic {

// Symmetric-resonance line shape including power broadening. Assumes
// omega12 much larger than gamma0, gamma12, rabi and gamma_star, and
// delta = 0; omega is the laser detuning from the pair center.
double lorentzian_S(const SystemParams& p, double omega);
std::vector<double> lorentzian_S(const SystemParams& p,
                                 const std::vector<double>& omegas);

// Weak-drive reduction of lorentzian_S (drops the power-broadening term).
double lorentzian_S_weak(const SystemParams& p, double omega);

// Peak value of the weak-drive form at omega = omega12:
// 2 rabi^2 (g0+gs-g12) / ((g0+gs+g12)(g0^2+g0 gs-g12^2)).
double lorentzian_S_peak(const SystemParams& p);

// Full width of the weak-drive form: gamma0 + gamma_star + gamma12.
double lorentzian_S_fwhm(const SystemParams& p);

// Height of the central two-photon resonance for negligible dephasing:
// 2(X^2+2X^4) / (4(X^2+X^4+Y^2)) with X = rabi/gamma0, Y = omega12/gamma0.
double lorentzian_E_amplitude(const SystemParams& p);

// Coarse regime label for the central resonance height.
enum class DriveRegime { saturated, quadratic, linear };
DriveRegime classify_drive_regime(const SystemParams& p);

struct SaturationExpansion {
  double linear;     // exact low-intensity coefficient of rabi^2
  double quadratic;  // large-omega12, large-gamma_star coefficient of rabi^4
};

// Low-drive expansion of n_exc at laser_detuning = 0, delta = 0. The
// linear coefficient is exact; the quadratic one uses the simplified
// 4(4 omega12^2 gamma0 - gs^3)/(gamma0^2 gs (4 omega12^2 + gs^2)^2) form,
// whose sign flips at the two-photon dephasing threshold. At gs = 0 the
// simplified form divides by zero; the signed limit is returned instead.
SaturationExpansion saturation_expansion_coefficients(const SystemParams& p);

// Numeric counterpart of the quadratic coefficient: fit
// n_exc = c1 x + c2 x^2, x = rabi^2, through steady-state solutions at
// two probe amplitudes. Returns c2.
double quadratic_coefficient_numeric(const SystemParams& p,
                                     double probe_lo = 0.005,
                                     double probe_hi = 0.01);

// gamma_star at which quadratic_coefficient_numeric changes sign,
// bisected on [lo, hi]. Throws TargetNotAchievable without a sign change.
double quadratic_flip_gamma_star(const SystemParams& p, double lo, double hi);

struct TwoPhotonPopulations {
  double ee;      // doubly excited population rho_ee,ee
  double single;  // excited population of one emitter (equal by symmetry)
};

// Exact steady-state populations of the resonantly driven pair for
// gamma_star = 0, delta = 0, laser_detuning = 0, equal drives.
TwoPhotonPopulations exact_populations_two_photon(const SystemParams& p);

// Approximate g2(0) under drive at laser_detuning = +omega12, gamma_star
// = 0: (rabi^2 (rabi^2 + 4 w^2) + (g0+g12)^2 w^2) / (rabi^2 + 4 w^2)^2.
double superradiant_g2_zero(const SystemParams& p);

}  // namespace dimersim::analytic

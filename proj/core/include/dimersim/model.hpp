#pragma once

#include <array>

#include "dimersim/types.hpp"

namespace dimersim {

// Parameters of a driven pair of two-level emitters. All rates are in
// units of gamma0, times in 1/gamma0, and the drive is described in the
// frame rotating at the laser frequency.
struct SystemParams {
  double gamma0 = 1.0;       // radiative decay rate of each emitter
  double alpha = 0.3;        // zero-phonon-line branching fraction, in (0,1]
  double omega12 = 20.0;     // coherent dipole-dipole coupling
  double gamma12 = 0.3;      // dissipative coupling, |gamma12| <= alpha*gamma0
  double gamma_star = 0.0;   // pure dephasing rate, >= 0
  double delta = 0.0;        // transition-frequency splitting omega2 - omega1
  double laser_detuning = 0.0;           // omega_laser - (omega1+omega2)/2
  std::array<double, 2> rabi{0.0, 0.0};  // drive amplitude on each emitter

  void set_rabi(double r) { rabi = {r, r}; }
  // Throws InvalidParameter when a field is outside its domain.
  void validate() const;
};

// Basis order {|gg>, |ge>, |eg>, |ee>}; the first letter is emitter 1.
inline constexpr int kGG = 0;
inline constexpr int kGE = 1;
inline constexpr int kEG = 2;
inline constexpr int kEE = 3;

// Lowering operator of emitter i in {1, 2}.
Matrix4 sigma(int emitter);

// sigma_i^dag sigma_i
Matrix4 number_op(int emitter);

// number_op(1) + number_op(2); eigenvalues {0, 1, 1, 2}
Matrix4 total_number();

// |G> = |gg>, |S> = (|ge>+|eg>)/sqrt2, |A> = (|eg>-|ge>)/sqrt2, |E> = |ee>
enum class NamedState { G, S, A, E };

Vector4 named_ket(NamedState tag);
Matrix4 named_state(NamedState tag);

// Detection direction enters only through the accumulated phase
// phi = k r_hat.r between the two emitters' fields at the detector;
// phi = 0 is detection perpendicular to the pair axis.
struct DetectionGeometry {
  double phi = 0.0;
};

// Collective far-field jump operator
// D = (e^{i phi/2} sigma_1 + e^{-i phi/2} sigma_2) / sqrt2.
Matrix4 detection_operator(const DetectionGeometry& geom);

}  // namespace dimersim

#pragma once

#include <vector>

#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/types.hpp"

namespace dimersim {

// Total excited population <n1 + n2> along a time grid, starting from rho0.
// Uses the spectral propagator unless the decomposition is flagged as
// ill-conditioned, in which case it falls back to direct integration.
std::vector<double> n_exc_trajectory(const SystemParams& p, const Matrix4& rho0,
                                     const std::vector<double>& times);

// First-order two-time coherence <D^dag(t) D(t+tau)> of the detection-mode
// field for the given geometry.
Complex g1(const SystemParams& p, const Matrix4& rho0,
           const DetectionGeometry& geom, double t, double tau);

// Time-resolved emission spectrum on a (t, omega) grid.
struct Spectrogram {
  std::vector<double> times;
  std::vector<double> omegas;
  // values(i, j) is the spectrum at times[i], omegas[j].
  Eigen::MatrixXd values;
};

enum class SpectrumMethod {
  kAuto,        // resolvent unless the decomposition is flagged
  kResolvent,   // partial-fraction sum over Liouvillian modes
  kQuadrature,  // direct Fourier integral of the tau correlation
};

// Re of the half-range Fourier transform of g1(t, tau) over tau >= 0,
// evaluated at every grid point. The resolvent form sums
//   -Re sum_{uv} exp(lambda_u t) a_u K_uv b_v / (lambda_v + i omega)
// over mode pairs; the quadrature form integrates the correlation with a
// composite Simpson rule (step 0.005/gamma0 out to 40/gamma0) and serves
// as an independent cross-check.
Spectrogram g1_spectrum(const SystemParams& p, const Matrix4& rho0,
                        const DetectionGeometry& geom,
                        const std::vector<double>& times,
                        const std::vector<double>& omegas,
                        SpectrumMethod method = SpectrumMethod::kAuto);

// Normalized second-order coherence
//   g2(t, t+tau) = <D^dag(t) D^dag D(t+tau) D(t)> / (I(t) I(t+tau))
// with I the detection-mode intensity. Throws UndefinedCorrelation when
// either intensity is at numerical zero (<= 1e-30).
double g2_time(const SystemParams& p, const Matrix4& rho0,
               const DetectionGeometry& geom, double t, double tau);

// Equal-time g2 from populations alone: with both emitters decaying at the
// same rate the four-operator average at tau = 0 reduces to the doubly
// excited population over the squared detected intensity,
//   rho_ee / (rho_ee + rho_SS cos^2(phi/2) + rho_AA sin^2(phi/2))^2.
double g2_equal_time_population_form(const Matrix4& rho_t,
                                     const DetectionGeometry& geom);

// Closed-form G2(t, tau) for the undriven cascade from |ee>: the initial
// state relaxes through the symmetric/antisymmetric doorway states, giving
// three exponential branches in tau plus an oscillatory interference term
// at frequency sqrt(4 omega12^2 - gamma_star^2/4). Exact for rabi = 0 and
// delta = 0 (the laser detuning drops out without a drive). Requires
// gamma12 != 0 (the branch weights are normalized by the cross-decay
// rate); throws SingularFormula otherwise.
double closed_form_G2(const SystemParams& p, const DetectionGeometry& geom,
                      double t, double tau);

// One Liouvillian eigenvalue with its right and left eigenoperators,
// normalized to Tr(left^dag right) = 1.
struct EigenTriple {
  Complex eigenvalue;
  Matrix4 right;
  Matrix4 left;
};

// The four population-sector modes of the undriven, resonant Liouvillian in
// closed form: stationary ground, symmetric and antisymmetric doorway decay,
// and the doubly excited decay at exactly -2 gamma0.
struct AnalyticEigensystem {
  EigenTriple ground;
  EigenTriple symmetric;
  EigenTriple antisymmetric;
  EigenTriple doubly_excited;
};

// Preconditions: rabi = {0, 0} and delta = 0 (InvalidParameter otherwise).
// Throws SingularFormula when gamma12 = 0 or at the exceptional point
// gamma_star + sqrt(gamma_star^2 + 4 gamma12^2) = 2 gamma0, where the
// left eigenoperators of the doorway sector diverge.
AnalyticEigensystem analytic_eigensystem(const SystemParams& p);

}  // namespace dimersim

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/types.hpp"

namespace dimersim {

// Total excited-state population 2 rho_ee,ee + rho_eg,eg + rho_ge,ge.
double n_exc(const Matrix4& rho);

// Photon emission rate into the phonon sideband, computed from the
// sideband part of the decay dissipator. Equals (1-alpha)*gamma0*n_exc
// identically; the redundant route exists so tests can check the split.
double redshifted_emission_rate(const Matrix4& rho, const SystemParams& p);

struct SpectrumResult {
  std::vector<double> axis;    // swept laser detunings or drive amplitudes
  std::vector<double> values;  // observable per axis point
  SystemParams params;         // base parameters of the sweep
};

// n_exc of the driven steady state for each laser detuning.
SpectrumResult excitation_spectrum(const SystemParams& p,
                                   const std::vector<double>& detunings,
                                   int threads = 1);

// Rows: gamma_star values; columns: detunings.
Eigen::MatrixXd excitation_spectrum_map(const SystemParams& p,
                                        const std::vector<double>& detunings,
                                        const std::vector<double>& gamma_stars,
                                        int threads = 1);

struct SaturationCurve {
  std::vector<double> rabi;
  std::vector<double> n_exc;
  std::vector<double> slope;  // local d ln n_exc / d ln(rabi^2)
  SystemParams params;
};

// n_exc at fixed laser detuning versus drive amplitude, with the local
// log-log slope against the squared amplitude (the intensity).
SaturationCurve saturation_curve(const SystemParams& p,
                                 const std::vector<double>& rabis,
                                 int threads = 1);

// g2(0) = <Dd Dd D D> / <Dd D>^2 for the detection operator D(phi).
// Throws UndefinedCorrelation when <Dd D>^2 <= 1e-30.
double g2_zero(const Matrix4& rho, const DetectionGeometry& geom);

// Matrix-element form of g2(0) for perpendicular detection (phi = 0):
// 4 rho_ee,ee / (2 rho_ee,ee + rho_eg,eg + rho_ge,ge + 2 Re rho_eg,ge)^2.
double g2_zero_population_form(const Matrix4& rho);

enum class Excitation { two_photon, superradiant };

// Map of steady-state g2(0); rows: gamma_star, columns: rabi. two_photon
// drives at laser_detuning = 0, superradiant at +omega12.
Eigen::MatrixXd g2_zero_map(const SystemParams& p,
                            const std::vector<double>& rabis,
                            const std::vector<double>& gamma_stars,
                            Excitation excitation, int threads = 1);

// Closed-form dephasing thresholds above which coupling signatures fade:
// (4 omega12^2 gamma0)^(1/3) for the two-photon resonance, 4|omega12| for
// the superradiant one. Requires omega12 != 0.
double threshold_gamma_star(const SystemParams& p, Excitation excitation);

// Drive-amplitude thresholds: sqrt(|omega12| gamma0) and 2|omega12|.
double threshold_rabi(const SystemParams& p, Excitation excitation);

struct Peak {
  int index;
  double value;
  double prominence;
};

// Interior local maxima with at least the given prominence (same units
// as the values). Prominence is measured against the higher of the two
// valley floors separating the peak from higher terrain or the ends.
std::vector<Peak> find_peaks(const std::vector<double>& values,
                             double min_prominence);

}  // namespace dimersim

#pragma once

#include <vector>

namespace dimersim::fits {

// Least-squares slope of ln(y) against t restricted to samples with
// t in [t0, t1]. Requires at least two window samples with y > 0.
double log_slope(const std::vector<double>& ts, const std::vector<double>& ys,
                 double t0, double t1);

struct ExpFit {
  double rate = 0.0;       // decay rate r in a exp(-r t)
  double amplitude = 0.0;  // prefactor a
  double rms = 0.0;        // root mean square residual in y
};

// Fit y ~ a exp(-r t) by linear regression on ln(y). All y must be > 0.
ExpFit fit_mono_exponential(const std::vector<double>& ts,
                            const std::vector<double>& ys);

struct BiExpFit {
  double rate1 = 0.0;  // slower rate (rate1 <= rate2)
  double amp1 = 0.0;
  double rate2 = 0.0;
  double amp2 = 0.0;
  double rms = 0.0;
};

// Fit y ~ a1 exp(-r1 t) + a2 exp(-r2 t). Amplitudes are solved exactly for
// each rate pair (linear least squares); the two rates are refined from the
// given positive seeds by a Nelder-Mead search in log-rate space.
BiExpFit fit_bi_exponential(const std::vector<double>& ts,
                            const std::vector<double>& ys, double seed1,
                            double seed2);

}  // namespace dimersim::fits

#include "dimersim/fits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "dimersim/errors.hpp"

namespace dimersim::fits {

namespace {

struct LineFit {
  double slope;
  double intercept;
};

LineFit regress(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw InvalidParameter("regression abscissae are degenerate");
  return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

// Best amplitudes for fixed rates plus the resulting sum of squares.
struct Projected {
  double a1;
  double a2;
  double ss;
};

Projected project_amplitudes(const std::vector<double>& ts,
                             const std::vector<double>& ys, double r1,
                             double r2) {
  double e11 = 0.0, e12 = 0.0, e22 = 0.0, b1 = 0.0, b2 = 0.0, yy = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    const double f1 = std::exp(-r1 * ts[i]);
    const double f2 = std::exp(-r2 * ts[i]);
    e11 += f1 * f1;
    e12 += f1 * f2;
    e22 += f2 * f2;
    b1 += f1 * ys[i];
    b2 += f2 * ys[i];
    yy += ys[i] * ys[i];
  }
  const double det = e11 * e22 - e12 * e12;
  if (!(det > 1e-14 * e11 * e22))
    return {0.0, 0.0, std::numeric_limits<double>::max()};  // rates coincide
  const double a1 = (e22 * b1 - e12 * b2) / det;
  const double a2 = (e11 * b2 - e12 * b1) / det;
  const double ss = yy - a1 * b1 - a2 * b2;
  return {a1, a2, std::max(ss, 0.0)};
}

}  // namespace

double log_slope(const std::vector<double>& ts, const std::vector<double>& ys,
                 double t0, double t1) {
  if (ts.size() != ys.size())
    throw InvalidParameter("log_slope: mismatched sample arrays");
  std::vector<double> xs, ls;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < t0 || ts[i] > t1) continue;
    if (!(ys[i] > 0.0))
      throw InvalidParameter("log_slope window contains non-positive values");
    xs.push_back(ts[i]);
    ls.push_back(std::log(ys[i]));
  }
  if (xs.size() < 2)
    throw InvalidParameter("log_slope window holds fewer than two samples");
  return regress(xs, ls).slope;
}

ExpFit fit_mono_exponential(const std::vector<double>& ts,
                            const std::vector<double>& ys) {
  if (ts.size() != ys.size() || ts.size() < 2)
    throw InvalidParameter("fit_mono_exponential needs two or more samples");
  std::vector<double> ls(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] > 0.0))
      throw InvalidParameter("fit_mono_exponential requires positive values");
    ls[i] = std::log(ys[i]);
  }
  const LineFit line = regress(ts, ls);
  ExpFit fit;
  fit.rate = -line.slope;
  fit.amplitude = std::exp(line.intercept);
  double ss = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - fit.amplitude * std::exp(-fit.rate * ts[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(ts.size()));
  return fit;
}

BiExpFit fit_bi_exponential(const std::vector<double>& ts,
                            const std::vector<double>& ys, double seed1,
                            double seed2) {
  if (ts.size() != ys.size() || ts.size() < 4)
    throw InvalidParameter("fit_bi_exponential needs four or more samples");
  if (!(seed1 > 0.0) || !(seed2 > 0.0))
    throw InvalidParameter("fit_bi_exponential seeds must be positive rates");

  const auto objective = [&](const std::array<double, 2>& x) {
    return project_amplitudes(ts, ys, std::exp(x[0]), std::exp(x[1])).ss;
  };

  // Nelder-Mead in log-rate space: reflection 1, expansion 2,
  // contraction 1/2, shrink 1/2.
  std::array<std::array<double, 2>, 3> sim = {
      {{std::log(seed1), std::log(seed2)},
       {std::log(seed1) + 0.1, std::log(seed2)},
       {std::log(seed1), std::log(seed2) + 0.1}}};
  std::array<double, 3> val{};
  for (int i = 0; i < 3; ++i) val[static_cast<size_t>(i)] = objective(sim[static_cast<size_t>(i)]);

  const auto order = [&] {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return val[static_cast<size_t>(a)] < val[static_cast<size_t>(b)]; });
    std::array<std::array<double, 2>, 3> s2;
    std::array<double, 3> v2{};
    for (int i = 0; i < 3; ++i) {
      s2[static_cast<size_t>(i)] = sim[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      v2[static_cast<size_t>(i)] = val[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    }
    sim = s2;
    val = v2;
  };

  for (int iter = 0; iter < 400; ++iter) {
    order();
    const std::array<double, 2> centroid = {(sim[0][0] + sim[1][0]) / 2.0,
                                            (sim[0][1] + sim[1][1]) / 2.0};
    const auto blend = [&](double coeff) {
      return std::array<double, 2>{centroid[0] + coeff * (centroid[0] - sim[2][0]),
                                   centroid[1] + coeff * (centroid[1] - sim[2][1])};
    };
    const auto refl = blend(1.0);
    const double f_refl = objective(refl);
    if (f_refl < val[0]) {
      const auto expn = blend(2.0);
      const double f_expn = objective(expn);
      if (f_expn < f_refl) {
        sim[2] = expn;
        val[2] = f_expn;
      } else {
        sim[2] = refl;
        val[2] = f_refl;
      }
    } else if (f_refl < val[1]) {
      sim[2] = refl;
      val[2] = f_refl;
    } else {
      const auto ctr = blend(-0.5);
      const double f_ctr = objective(ctr);
      if (f_ctr < val[2]) {
        sim[2] = ctr;
        val[2] = f_ctr;
      } else {
        for (int i = 1; i < 3; ++i) {
          sim[static_cast<size_t>(i)][0] = (sim[static_cast<size_t>(i)][0] + sim[0][0]) / 2.0;
          sim[static_cast<size_t>(i)][1] = (sim[static_cast<size_t>(i)][1] + sim[0][1]) / 2.0;
          val[static_cast<size_t>(i)] = objective(sim[static_cast<size_t>(i)]);
        }
      }
    }
  }
  order();

  const double r1 = std::exp(sim[0][0]);
  const double r2 = std::exp(sim[0][1]);
  const Projected best = project_amplitudes(ts, ys, r1, r2);

  BiExpFit fit;
  fit.rate1 = r1;
  fit.amp1 = best.a1;
  fit.rate2 = r2;
  fit.amp2 = best.a2;
  if (fit.rate1 > fit.rate2) {
    std::swap(fit.rate1, fit.rate2);
    std::swap(fit.amp1, fit.amp2);
  }
  fit.rms = std::sqrt(best.ss / static_cast<double>(ts.size()));
  return fit;
}

}  // namespace dimersim::fits

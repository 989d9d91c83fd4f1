#include "dimersim/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "dimersim/coupling.hpp"
#include "dimersim/dynamics.hpp"
#include "dimersim/errors.hpp"
#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/parallel.hpp"
#include "dimersim/stationary.hpp"
#include "dimersim/version.hpp"

namespace dimersim {

namespace {

struct Table {
  std::vector<std::string> notes;  // extra header lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

SystemParams params_from(const RunConfig& config) {
  SystemParams p;
  p.gamma0 = get_scalar(config, "gamma0", p.gamma0);
  p.alpha = get_scalar(config, "alpha", p.alpha);
  p.omega12 = get_scalar(config, "omega12", p.omega12);
  p.gamma12 = get_scalar(config, "gamma12", p.gamma12);
  p.delta = get_scalar(config, "delta", p.delta);
  p.laser_detuning = get_scalar(config, "laser_detuning", p.laser_detuning);
  return p;
}

Matrix4 initial_state_from(const RunConfig& config) {
  const std::string tag = get_token(config, "initial_state", "G");
  if (tag == "G") return named_state(NamedState::G);
  if (tag == "S") return named_state(NamedState::S);
  if (tag == "A") return named_state(NamedState::A);
  return named_state(NamedState::E);
}

Table spectrum_table(const RunConfig& config, int threads) {
  Table t;
  t.columns = {"gamma_star", "detuning", "n_exc", "redshifted_rate"};
  const auto gss = get_numbers(config, "gamma_star", 0.0);
  const auto dets = find_entry(config, "detuning")->numbers();
  SystemParams base = params_from(config);
  base.set_rabi(get_scalar(config, "rabi", 0.0));

  const int total = static_cast<int>(gss.size() * dets.size());
  std::vector<double> pop(static_cast<size_t>(total));
  std::vector<double> red(static_cast<size_t>(total));
  parallel_for(total, threads, [&](int idx) {
    SystemParams p = base;
    p.gamma_star = gss[static_cast<size_t>(idx) / dets.size()];
    p.laser_detuning = dets[static_cast<size_t>(idx) % dets.size()];
    const Matrix4 rho = steady_state(build_liouvillian(p));
    pop[static_cast<size_t>(idx)] = n_exc(rho);
    red[static_cast<size_t>(idx)] = redshifted_emission_rate(rho, p);
  });
  for (int i = 0; i < total; ++i) {
    const auto idx = static_cast<size_t>(i);
    t.rows.push_back({fmt(gss[idx / dets.size()]), fmt(dets[idx % dets.size()]),
                      fmt(pop[idx]), fmt(red[idx])});
  }
  return t;
}

Table saturation_table(const RunConfig& config, int threads) {
  Table t;
  t.columns = {"gamma_star", "rabi",  "rabi_sq",
               "intensity_ratio",     "n_exc", "loglog_slope"};
  t.notes.push_back(
      "intensity_ratio: rabi^2 / i_sat, where i_sat is the rabi^2 at which "
      "n_exc reaches half its value at the last drive point, interpolated "
      "linearly in rabi^2 on this curve");
  const auto gss = get_numbers(config, "gamma_star", 0.0);
  const auto rabis = find_entry(config, "rabi")->numbers();
  SystemParams base = params_from(config);

  for (double gs : gss) {
    SystemParams p = base;
    p.gamma_star = gs;
    const SaturationCurve curve = saturation_curve(p, rabis, threads);

    const double target = 0.5 * curve.n_exc.back();
    double i_sat = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < curve.n_exc.size(); ++i) {
      if (curve.n_exc[i] < target) continue;
      const double x1 = curve.rabi[i] * curve.rabi[i];
      if (i == 0) {
        i_sat = x1;
      } else {
        const double x0 = curve.rabi[i - 1] * curve.rabi[i - 1];
        const double y0 = curve.n_exc[i - 1];
        const double y1 = curve.n_exc[i];
        i_sat = x0 + (target - y0) / (y1 - y0) * (x1 - x0);
      }
      break;
    }
    t.notes.push_back("i_sat at gamma_star " + fmt(gs) + ": " + fmt(i_sat));

    for (size_t i = 0; i < curve.rabi.size(); ++i) {
      const double x = curve.rabi[i] * curve.rabi[i];
      t.rows.push_back({fmt(gs), fmt(curve.rabi[i]), fmt(x), fmt(x / i_sat),
                        fmt(curve.n_exc[i]), fmt(curve.slope[i])});
    }
  }
  return t;
}

Table g2map_table(const RunConfig& config, int threads) {
  Table t;
  t.columns = {"gamma_star", "rabi", "g2_zero"};
  const auto gss = find_entry(config, "gamma_star")->numbers();
  const auto rabis = find_entry(config, "rabi")->numbers();
  const Excitation exc = get_token(config, "excitation", "") == "two_photon"
                             ? Excitation::two_photon
                             : Excitation::superradiant;
  const Eigen::MatrixXd m =
      g2_zero_map(params_from(config), rabis, gss, exc, threads);
  for (size_t gi = 0; gi < gss.size(); ++gi)
    for (size_t ri = 0; ri < rabis.size(); ++ri)
      t.rows.push_back({fmt(gss[gi]), fmt(rabis[ri]),
                        fmt(m(static_cast<Eigen::Index>(gi),
                              static_cast<Eigen::Index>(ri)))});
  return t;
}

Table decay_table(const RunConfig& config, int threads) {
  Table t;
  const auto gss = get_numbers(config, "gamma_star", 0.0);
  const auto ts = find_entry(config, "t")->numbers();
  const bool swept = gss.size() > 1;
  t.columns = swept ? std::vector<std::string>{"gamma_star", "t", "n_exc"}
                    : std::vector<std::string>{"t", "n_exc"};
  SystemParams base = params_from(config);
  base.set_rabi(get_scalar(config, "rabi", 0.0));
  const Matrix4 rho0 = initial_state_from(config);

  std::vector<std::vector<double>> traj(gss.size());
  parallel_for(static_cast<int>(gss.size()), threads, [&](int i) {
    SystemParams p = base;
    p.gamma_star = gss[static_cast<size_t>(i)];
    traj[static_cast<size_t>(i)] = n_exc_trajectory(p, rho0, ts);
  });
  for (size_t gi = 0; gi < gss.size(); ++gi)
    for (size_t ti = 0; ti < ts.size(); ++ti) {
      if (swept)
        t.rows.push_back({fmt(gss[gi]), fmt(ts[ti]), fmt(traj[gi][ti])});
      else
        t.rows.push_back({fmt(ts[ti]), fmt(traj[gi][ti])});
    }
  return t;
}

Table g1spec_table(const RunConfig& config) {
  Table t;
  t.columns = {"t", "omega", "spectrum"};
  SystemParams p = params_from(config);
  p.set_rabi(get_scalar(config, "rabi", 0.0));
  p.gamma_star = get_scalar(config, "gamma_star", 0.0);
  const Matrix4 rho0 = initial_state_from(config);
  const DetectionGeometry geom{get_scalar(config, "phi", 0.0)};
  const auto ts = find_entry(config, "t")->numbers();
  const auto omegas = find_entry(config, "omega")->numbers();
  const std::string method = get_token(config, "method", "auto");
  const SpectrumMethod m = method == "resolvent" ? SpectrumMethod::kResolvent
                           : method == "quadrature"
                               ? SpectrumMethod::kQuadrature
                               : SpectrumMethod::kAuto;
  const Spectrogram spec = g1_spectrum(p, rho0, geom, ts, omegas, m);
  for (size_t ti = 0; ti < ts.size(); ++ti)
    for (size_t wi = 0; wi < omegas.size(); ++wi)
      t.rows.push_back({fmt(ts[ti]), fmt(omegas[wi]),
                        fmt(spec.values(static_cast<Eigen::Index>(ti),
                                        static_cast<Eigen::Index>(wi)))});
  return t;
}

Table g2time_table(const RunConfig& config, int threads) {
  Table t;
  t.columns = {"gamma_star", "t",       "intensity_perp",
               "intensity_par",         "g2_perp", "g2_par"};
  const double sep = get_scalar(config, "separation", 0.0);
  const double alpha = get_scalar(config, "alpha", 0.3);
  const double gamma0 = get_scalar(config, "gamma0", 1.0);
  const CouplingRates rates =
      coupling_rates(Geometry::h_config(sep), alpha, gamma0);
  t.notes.push_back("omega12 derived from separation: " + fmt(rates.omega12));
  t.notes.push_back("gamma12 derived from separation: " + fmt(rates.gamma12));

  SystemParams base = params_from(config);
  base.omega12 = rates.omega12;
  base.gamma12 = rates.gamma12;
  const Matrix4 rho0 = initial_state_from(config);
  const auto gss = get_numbers(config, "gamma_star", 0.0);
  const auto ts = find_entry(config, "t")->numbers();
  const DetectionGeometry perp{0.0};
  const DetectionGeometry par{2.0 * std::numbers::pi * sep};
  const Matrix4 n_perp =
      detection_operator(perp).adjoint() * detection_operator(perp);
  const Matrix4 n_par =
      detection_operator(par).adjoint() * detection_operator(par);

  std::vector<std::vector<std::array<double, 4>>> vals(gss.size());
  parallel_for(static_cast<int>(gss.size()), threads, [&](int i) {
    SystemParams p = base;
    p.gamma_star = gss[static_cast<size_t>(i)];
    const auto dec = spectral_decompose(build_liouvillian(p));
    std::vector<Matrix4> states;
    if (dec.flagged) {
      states = propagate_ode(Superoperator{dec.generator}, rho0, ts);
    } else {
      states.reserve(ts.size());
      for (double time : ts)
        states.push_back(propagate_spectral(dec, rho0, time));
    }
    auto& out = vals[static_cast<size_t>(i)];
    out.resize(ts.size());
    for (size_t ti = 0; ti < ts.size(); ++ti) {
      const Matrix4& rho = states[ti];
      out[ti] = {(n_perp * rho).trace().real(), (n_par * rho).trace().real(),
                 g2_equal_time_population_form(rho, perp),
                 g2_equal_time_population_form(rho, par)};
    }
  });
  for (size_t gi = 0; gi < gss.size(); ++gi)
    for (size_t ti = 0; ti < ts.size(); ++ti) {
      const auto& v = vals[gi][ti];
      t.rows.push_back({fmt(gss[gi]), fmt(ts[ti]), fmt(v[0]), fmt(v[1]),
                        fmt(v[2]), fmt(v[3])});
    }
  return t;
}

Table thresholds_table(const RunConfig& config) {
  Table t;
  t.columns = {"excitation", "threshold_gamma_star", "threshold_rabi"};
  SystemParams p;
  p.gamma0 = get_scalar(config, "gamma0", p.gamma0);
  p.omega12 = get_scalar(config, "omega12", p.omega12);
  for (const Excitation exc :
       {Excitation::two_photon, Excitation::superradiant}) {
    t.rows.push_back(
        {exc == Excitation::two_photon ? "two_photon" : "superradiant",
         fmt(threshold_gamma_star(p, exc)), fmt(threshold_rabi(p, exc))});
  }
  return t;
}

Table coupling_table(const RunConfig& config) {
  Table t;
  t.columns = {"separation", "re_g", "im_g", "omega12", "gamma12"};
  const double alpha = get_scalar(config, "alpha", 0.3);
  const double gamma0 = get_scalar(config, "gamma0", 1.0);
  std::vector<double> seps;
  if (const ConfigValue* target = find_entry(config, "target_omega12")) {
    seps.push_back(distance_for_coupling(target->scalar,
                                         Geometry::h_config(0.03), alpha,
                                         gamma0));
  } else {
    seps = get_numbers(config, "separation", 0.0);
  }
  for (double sep : seps) {
    const Complex g = green_scalar(Geometry::h_config(sep), alpha, gamma0);
    const CouplingRates rates = coupling_rates(g);
    t.rows.push_back({fmt(sep), fmt(g.real()), fmt(g.imag()),
                      fmt(rates.omega12), fmt(rates.gamma12)});
  }
  return t;
}

void put_default(RunConfig& cfg, const std::string& key, ConfigValue value) {
  cfg.entries.emplace(key, std::move(value));
}

void put_pair_defaults(RunConfig& cfg) {
  const SystemParams d;
  put_default(cfg, "gamma0", ConfigValue::make_scalar(d.gamma0));
  put_default(cfg, "alpha", ConfigValue::make_scalar(d.alpha));
  put_default(cfg, "omega12", ConfigValue::make_scalar(d.omega12));
  put_default(cfg, "gamma12", ConfigValue::make_scalar(d.gamma12));
  put_default(cfg, "delta", ConfigValue::make_scalar(d.delta));
}

// The input config with every optional key resolved to its default, so the
// output header records the complete parameter set of the run.
RunConfig effective_config(const RunConfig& config) {
  RunConfig eff = config;
  const ConfigValue zero = ConfigValue::make_scalar(0.0);
  switch (config.scenario) {
    case Scenario::kSpectrum:
      put_pair_defaults(eff);
      put_default(eff, "rabi", zero);
      put_default(eff, "gamma_star", zero);
      break;
    case Scenario::kSaturation:
      put_pair_defaults(eff);
      put_default(eff, "laser_detuning", zero);
      put_default(eff, "gamma_star", zero);
      break;
    case Scenario::kG2Map:
      put_pair_defaults(eff);
      break;
    case Scenario::kDecay:
      put_pair_defaults(eff);
      put_default(eff, "laser_detuning", zero);
      put_default(eff, "rabi", zero);
      put_default(eff, "gamma_star", zero);
      break;
    case Scenario::kG1Spec:
      put_pair_defaults(eff);
      put_default(eff, "laser_detuning", zero);
      put_default(eff, "rabi", zero);
      put_default(eff, "gamma_star", zero);
      put_default(eff, "phi", zero);
      put_default(eff, "method", ConfigValue::make_token("auto"));
      break;
    case Scenario::kG2Time: {
      const SystemParams d;
      put_default(eff, "gamma0", ConfigValue::make_scalar(d.gamma0));
      put_default(eff, "alpha", ConfigValue::make_scalar(d.alpha));
      put_default(eff, "delta", zero);
      put_default(eff, "laser_detuning", zero);
      put_default(eff, "gamma_star", zero);
      break;
    }
    case Scenario::kThresholds: {
      const SystemParams d;
      put_default(eff, "gamma0", ConfigValue::make_scalar(d.gamma0));
      put_default(eff, "omega12", ConfigValue::make_scalar(d.omega12));
      break;
    }
    case Scenario::kCoupling: {
      const SystemParams d;
      put_default(eff, "gamma0", ConfigValue::make_scalar(d.gamma0));
      put_default(eff, "alpha", ConfigValue::make_scalar(d.alpha));
      if (!find_entry(eff, "target_omega12"))
        put_default(eff, "separation",
                    ConfigValue::make_axis(AxisSpec{0.01, 1.0, 181, true}));
      break;
    }
  }
  put_default(eff, "output", ConfigValue::make_token(
                                 scenario_name(config.scenario) + ".csv"));
  return eff;
}

RunResult write_table(const Table& t, const RunConfig& eff,
                      const RunOptions& opts, const std::string& filename) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + opts.out_dir +
                  "': " + ec.message());
  const fs::path final_path = fs::path(opts.out_dir) / filename;
  const fs::path tmp_path = final_path.string() + ".tmp";

  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open '" + tmp_path.string() + "' for writing");
    out << "# dimersim " << kVersion << "\n";
    std::istringstream cfg(render_config(eff));
    std::string line;
    while (std::getline(cfg, line)) out << "# " << line << "\n";
    for (const auto& note : t.notes) out << "# " << note << "\n";
    out << "# columns: ";
    for (size_t i = 0; i < t.columns.size(); ++i) {
      if (i > 0) out << ',';
      out << t.columns[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out << ',';
        out << row[i];
      }
      out << "\n";
    }
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp_path, ec);
      throw IoError("failed while writing '" + tmp_path.string() + "'");
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp_path, ignored);
    throw IoError("cannot move results into place at '" +
                  final_path.string() + "': " + ec.message());
  }
  return {final_path.string(), t.rows.size()};
}

}  // namespace

RunResult run_config(const RunConfig& config, const RunOptions& opts) {
  validate_config(config);
  int threads = opts.threads;
  if (threads <= 0)
    threads = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));

  const RunConfig eff = effective_config(config);
  Table t;
  switch (eff.scenario) {
    case Scenario::kSpectrum:
      t = spectrum_table(eff, threads);
      break;
    case Scenario::kSaturation:
      t = saturation_table(eff, threads);
      break;
    case Scenario::kG2Map:
      t = g2map_table(eff, threads);
      break;
    case Scenario::kDecay:
      t = decay_table(eff, threads);
      break;
    case Scenario::kG1Spec:
      t = g1spec_table(eff);
      break;
    case Scenario::kG2Time:
      t = g2time_table(eff, threads);
      break;
    case Scenario::kThresholds:
      t = thresholds_table(eff);
      break;
    case Scenario::kCoupling:
      t = coupling_table(eff);
      break;
  }
  const std::string filename =
      get_token(eff, "output", scenario_name(eff.scenario) + ".csv");
  return write_table(t, eff, opts, filename);
}

}  // namespace dimersim

#include "dimersim/presets.hpp"

#include <cmath>

#include "dimersim/coupling.hpp"
#include "dimersim/errors.hpp"

namespace dimersim {

namespace {

ConfigValue axis(double start, double stop, int count, bool log_scale = false) {
  return ConfigValue::make_axis(AxisSpec{start, stop, count, log_scale});
}

RunConfig spectrum_preset(double rabi, const std::string& output) {
  RunConfig cfg;
  cfg.scenario = Scenario::kSpectrum;
  cfg.entries["rabi"] = ConfigValue::make_scalar(rabi);
  cfg.entries["delta"] = ConfigValue::make_scalar(5.0);
  cfg.entries["detuning"] = axis(-30.0, 30.0, 200);
  cfg.entries["gamma_star"] = axis(0.1, 30.0, 200, true);
  cfg.entries["output"] = ConfigValue::make_token(output);
  return cfg;
}

RunConfig g2map_preset(const std::string& excitation,
                       const std::string& output) {
  RunConfig cfg;
  cfg.scenario = Scenario::kG2Map;
  cfg.entries["excitation"] = ConfigValue::make_token(excitation);
  cfg.entries["rabi"] = axis(0.1, 10.0, 101, true);
  cfg.entries["gamma_star"] = axis(0.1, 100.0, 101, true);
  cfg.entries["output"] = ConfigValue::make_token(output);
  return cfg;
}

RunConfig g1spec_preset(const std::string& initial, double gamma_star,
                        const std::string& output) {
  RunConfig cfg;
  cfg.scenario = Scenario::kG1Spec;
  cfg.entries["initial_state"] = ConfigValue::make_token(initial);
  cfg.entries["gamma_star"] = ConfigValue::make_scalar(gamma_star);
  cfg.entries["t"] = axis(0.0, 6.0, 121);
  cfg.entries["omega"] = axis(-30.0, 30.0, 241);
  // Quadrature detection phase: both doorway lines visible at equal
  // weight (broadside detection sees no subradiant emission at all).
  cfg.entries["phi"] = ConfigValue::make_scalar(1.5707963267948966);
  cfg.entries["output"] = ConfigValue::make_token(output);
  return cfg;
}

RunConfig g2time_preset(double t_max, const std::string& output) {
  RunConfig cfg;
  cfg.scenario = Scenario::kG2Time;
  cfg.entries["initial_state"] = ConfigValue::make_token("E");
  cfg.entries["gamma_star"] =
      ConfigValue::make_list({0.0, 0.5, 5.0, 50.0});
  cfg.entries["t"] = axis(0.0, t_max, 251);
  // Separation at which the coherent coupling reaches 20 gamma0 for the
  // default side-by-side geometry.
  const double sep =
      distance_for_coupling(20.0, Geometry::h_config(0.03), 0.3, 1.0);
  cfg.entries["separation"] = ConfigValue::make_scalar(sep);
  cfg.entries["output"] = ConfigValue::make_token(output);
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3d", "fig4a", "fig4b",
          "fig4c", "fig4e", "fig4f", "fig5a", "fig5b", "fig5c"};
}

RunConfig preset_config(const std::string& name) {
  if (name == "fig2a") return spectrum_preset(4.0, "fig2a.csv");
  if (name == "fig2b") return spectrum_preset(10.0, "fig2b.csv");
  if (name == "fig2c") {
    RunConfig cfg;
    cfg.scenario = Scenario::kSaturation;
    cfg.entries["delta"] = ConfigValue::make_scalar(5.0);
    cfg.entries["rabi"] = axis(0.05, 50.0, 120, true);
    // Dephasing rates straddling the two-photon critical value
    // (4 omega12^2 gamma0)^(1/3).
    cfg.entries["gamma_star"] = ConfigValue::make_list(
        {0.0, 3.0, std::cbrt(4.0 * 20.0 * 20.0), 30.0});
    cfg.entries["output"] = ConfigValue::make_token("fig2c.csv");
    return cfg;
  }
  if (name == "fig3a") return g2map_preset("two_photon", "fig3a.csv");
  if (name == "fig3d") return g2map_preset("superradiant", "fig3d.csv");
  if (name == "fig4a") {
    RunConfig cfg;
    cfg.scenario = Scenario::kDecay;
    cfg.entries["initial_state"] = ConfigValue::make_token("A");
    cfg.entries["gamma_star"] =
        ConfigValue::make_list({0.0, 0.5, 2.0, 10.0});
    cfg.entries["t"] = axis(0.0, 10.0, 401);
    cfg.entries["output"] = ConfigValue::make_token("fig4a.csv");
    return cfg;
  }
  if (name == "fig4b") return g1spec_preset("A", 0.0, "fig4b.csv");
  if (name == "fig4c") return g1spec_preset("A", 2.0, "fig4c.csv");
  if (name == "fig4e") return g1spec_preset("S", 0.0, "fig4e.csv");
  if (name == "fig4f") return g1spec_preset("S", 2.0, "fig4f.csv");
  if (name == "fig5a") {
    RunConfig cfg;
    cfg.scenario = Scenario::kDecay;
    cfg.entries["initial_state"] = ConfigValue::make_token("E");
    cfg.entries["gamma_star"] =
        ConfigValue::make_list({0.0, 0.5, 5.0, 50.0});
    cfg.entries["t"] = axis(0.0, 10.0, 401);
    cfg.entries["output"] = ConfigValue::make_token("fig5a.csv");
    return cfg;
  }
  if (name == "fig5b") return g2time_preset(5.0, "fig5b.csv");
  if (name == "fig5c") return g2time_preset(0.5, "fig5c.csv");
  throw InvalidParameter("unknown preset '" + name + "'");
}

}  // namespace dimersim

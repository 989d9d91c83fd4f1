#pragma once

#include <map>
#include <string>
#include <vector>

namespace dimersim {

// What a run computes. Each scenario has its own allowed/required keys and
// its own output table; see README for the full key reference.
enum class Scenario {
  kSpectrum,    // excited population vs laser detuning (x dephasing)
  kSaturation,  // excited population vs drive strength
  kG2Map,       // equal-time photon correlation over (rabi, gamma_star)
  kDecay,       // excited population vs time from a named initial state
  kG1Spec,      // time-resolved emission spectrum on a (t, omega) grid
  kG2Time,      // two-time photon correlation for both detection directions
  kThresholds,  // analytic critical dephasing / drive strengths
  kCoupling,    // dipole coupling rates vs emitter separation
};

std::string scenario_name(Scenario s);

// Sampling grid written as [start, stop, count] or [start, stop, count log].
struct AxisSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_scale = false;

  std::vector<double> values() const;  // endpoints exact
  bool operator==(const AxisSpec&) const = default;
};

// One configuration value: a number, a sampling grid, an explicit number
// list written list(a, b, ...), or a bare word.
struct ConfigValue {
  enum class Kind { kScalar, kAxis, kList, kToken };

  Kind kind = Kind::kScalar;
  double scalar = 0.0;
  AxisSpec axis;
  std::vector<double> list;
  std::string token;

  static ConfigValue make_scalar(double v);
  static ConfigValue make_axis(const AxisSpec& a);
  static ConfigValue make_list(std::vector<double> v);
  static ConfigValue make_token(std::string t);

  // The value as a number sequence (scalar -> one element). Throws on
  // tokens; callers must have checked the kind.
  std::vector<double> numbers() const;

  bool operator==(const ConfigValue&) const = default;
};

struct RunConfig {
  Scenario scenario = Scenario::kSpectrum;
  std::map<std::string, ConfigValue> entries;

  bool operator==(const RunConfig&) const = default;
};

// Line-oriented "key: value" text. '#' starts a comment, blank lines are
// skipped, keys are snake_case, each key may appear once, and exactly one
// line must set the scenario. Structural problems throw ConfigError with
// the 1-based line number.
RunConfig parse_config(const std::string& text);

// parse_config on a file's contents; unreadable file throws IoError.
RunConfig parse_config_file(const std::string& path);

// Scenario-aware checks: unknown keys, wrong value shapes, missing required
// keys, out-of-range physical parameters. Throws ConfigError.
void validate_config(const RunConfig& config);

// Canonical text form: scenario first, then entries sorted by key.
// parse_config(render_config(c)) == c with bit-exact numbers.
std::string render_config(const RunConfig& config);

// Lookup helpers for consumers of a validated config.
const ConfigValue* find_entry(const RunConfig& config, const std::string& key);
double get_scalar(const RunConfig& config, const std::string& key,
                  double fallback);
std::string get_token(const RunConfig& config, const std::string& key,
                      const std::string& fallback);
// Number sequence under key, or {fallback} when absent.
std::vector<double> get_numbers(const RunConfig& config, const std::string& key,
                                double fallback);

}  // namespace dimersim

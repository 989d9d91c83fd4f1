#include "dimersim/config.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "dimersim/errors.hpp"
#include "dimersim/model.hpp"

namespace dimersim {

namespace {

constexpr std::array<std::pair<Scenario, const char*>, 8> kScenarioNames = {{
    {Scenario::kSpectrum, "spectrum"},
    {Scenario::kSaturation, "saturation"},
    {Scenario::kG2Map, "g2map"},
    {Scenario::kDecay, "decay"},
    {Scenario::kG1Spec, "g1spec"},
    {Scenario::kG2Time, "g2time"},
    {Scenario::kThresholds, "thresholds"},
    {Scenario::kCoupling, "coupling"},
}};

std::string trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(trim(s.substr(pos)));
      return out;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  if (!std::isfinite(v)) return false;
  out = v;
  return true;
}

bool parse_count(const std::string& s, int& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return false;
  if (v < 0 || v > 1000000) return false;
  out = static_cast<int>(v);
  return true;
}

bool valid_key(const std::string& s) {
  if (s.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::islower(u) && !std::isdigit(u) && c != '_') return false;
  }
  return true;
}

bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '.' && c != '-') return false;
  }
  return true;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) == v) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scenario scenario_from_name(const std::string& name, int line) {
  for (const auto& [s, n] : kScenarioNames)
    if (name == n) return s;
  throw ConfigError("unknown scenario '" + name + "'", line);
}

ConfigValue parse_value(const std::string& raw, int line) {
  if (raw.front() == '[') {
    if (raw.back() != ']')
      throw ConfigError("grid value must end with ']'", line);
    const auto parts = split(raw.substr(1, raw.size() - 2), ',');
    if (parts.size() != 3)
      throw ConfigError("grid value needs [start, stop, count]", line);
    AxisSpec ax;
    if (!parse_number(parts[0], ax.start) || !parse_number(parts[1], ax.stop))
      throw ConfigError("grid bounds must be finite numbers", line);
    std::istringstream tail(parts[2]);
    std::string count_word, log_word, extra;
    tail >> count_word >> log_word >> extra;
    if (!extra.empty() || (!log_word.empty() && log_word != "log"))
      throw ConfigError("grid count must be 'N' or 'N log'", line);
    if (!parse_count(count_word, ax.count) || ax.count < 2)
      throw ConfigError("grid count must be an integer >= 2", line);
    ax.log_scale = !log_word.empty();
    if (!(ax.start < ax.stop))
      throw ConfigError("grid start must be below its stop", line);
    if (ax.log_scale && !(ax.start > 0.0))
      throw ConfigError("log grid start must be positive", line);
    return ConfigValue::make_axis(ax);
  }
  if (raw.rfind("list(", 0) == 0) {
    if (raw.back() != ')')
      throw ConfigError("list value must end with ')'", line);
    const auto parts = split(raw.substr(5, raw.size() - 6), ',');
    std::vector<double> vals;
    for (const auto& part : parts) {
      double v = 0.0;
      if (!parse_number(part, v))
        throw ConfigError("list entries must be finite numbers", line);
      vals.push_back(v);
    }
    if (vals.empty()) throw ConfigError("list value must not be empty", line);
    return ConfigValue::make_list(std::move(vals));
  }
  double v = 0.0;
  if (parse_number(raw, v)) return ConfigValue::make_scalar(v);
  if (!valid_token(raw))
    throw ConfigError("unrecognized value '" + raw + "'", line);
  return ConfigValue::make_token(raw);
}

}  // namespace

std::string scenario_name(Scenario s) {
  for (const auto& [sc, n] : kScenarioNames)
    if (sc == s) return n;
  throw InvalidParameter("unknown scenario enumerator");
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<size_t>(count));
  if (count == 1) {
    v[0] = start;
    return v;
  }
  if (log_scale) {
    const double la = std::log(start);
    const double lb = std::log(stop);
    for (int i = 0; i < count; ++i)
      v[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (count - 1));
  } else {
    for (int i = 0; i < count; ++i)
      v[static_cast<size_t>(i)] = start + (stop - start) * i / (count - 1);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

ConfigValue ConfigValue::make_scalar(double v) {
  ConfigValue out;
  out.kind = Kind::kScalar;
  out.scalar = v;
  return out;
}

ConfigValue ConfigValue::make_axis(const AxisSpec& a) {
  ConfigValue out;
  out.kind = Kind::kAxis;
  out.axis = a;
  return out;
}

ConfigValue ConfigValue::make_list(std::vector<double> v) {
  ConfigValue out;
  out.kind = Kind::kList;
  out.list = std::move(v);
  return out;
}

ConfigValue ConfigValue::make_token(std::string t) {
  ConfigValue out;
  out.kind = Kind::kToken;
  out.token = std::move(t);
  return out;
}

std::vector<double> ConfigValue::numbers() const {
  switch (kind) {
    case Kind::kScalar:
      return {scalar};
    case Kind::kAxis:
      return axis.values();
    case Kind::kList:
      return list;
    case Kind::kToken:
      break;
  }
  throw InvalidParameter("numbers() called on a word-valued config entry");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool have_scenario = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ConfigError("expected 'key: value'", line_no);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (!valid_key(key))
      throw ConfigError("invalid key '" + key + "'", line_no);
    if (value.empty())
      throw ConfigError("missing value for key '" + key + "'", line_no);

    if (key == "scenario") {
      if (have_scenario)
        throw ConfigError("duplicate key 'scenario'", line_no);
      cfg.scenario = scenario_from_name(value, line_no);
      have_scenario = true;
      continue;
    }
    if (!cfg.entries.emplace(key, parse_value(value, line_no)).second)
      throw ConfigError("duplicate key '" + key + "'", line_no);
  }
  if (!have_scenario) throw ConfigError("missing required key 'scenario'");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading config file '" + path + "'");
  return parse_config(buf.str());
}

namespace {

using Kind = ConfigValue::Kind;
using KeyKinds = std::map<std::string, std::set<Kind>>;

const std::set<Kind> kNum = {Kind::kScalar};
const std::set<Kind> kSweep = {Kind::kScalar, Kind::kAxis, Kind::kList};
const std::set<Kind> kGrid = {Kind::kAxis, Kind::kList};
const std::set<Kind> kWord = {Kind::kToken};

struct ScenarioRules {
  KeyKinds allowed;
  std::vector<std::string> required;
};

ScenarioRules rules_for(Scenario s) {
  const KeyKinds pair_params = {{"gamma0", kNum},  {"alpha", kNum},
                                {"omega12", kNum}, {"gamma12", kNum},
                                {"delta", kNum},   {"output", kWord}};
  ScenarioRules r;
  r.allowed = pair_params;
  switch (s) {
    case Scenario::kSpectrum:
      r.allowed["rabi"] = kNum;
      r.allowed["detuning"] = kSweep;
      r.allowed["gamma_star"] = kSweep;
      r.required = {"detuning"};
      break;
    case Scenario::kSaturation:
      r.allowed["laser_detuning"] = kNum;
      r.allowed["gamma_star"] = kSweep;
      r.allowed["rabi"] = kSweep;
      r.required = {"rabi"};
      break;
    case Scenario::kG2Map:
      r.allowed["excitation"] = kWord;
      r.allowed["rabi"] = kSweep;
      r.allowed["gamma_star"] = kSweep;
      r.required = {"excitation", "rabi", "gamma_star"};
      break;
    case Scenario::kDecay:
      r.allowed["laser_detuning"] = kNum;
      r.allowed["rabi"] = kNum;
      r.allowed["initial_state"] = kWord;
      r.allowed["gamma_star"] = kSweep;
      r.allowed["t"] = kGrid;
      r.required = {"initial_state", "t"};
      break;
    case Scenario::kG1Spec:
      r.allowed["laser_detuning"] = kNum;
      r.allowed["rabi"] = kNum;
      r.allowed["initial_state"] = kWord;
      r.allowed["gamma_star"] = kNum;
      r.allowed["t"] = kGrid;
      r.allowed["omega"] = kGrid;
      r.allowed["phi"] = kNum;
      r.allowed["method"] = kWord;
      r.required = {"initial_state", "t", "omega"};
      break;
    case Scenario::kG2Time:
      // Coupling rates are derived from the separation, so omega12 and
      // gamma12 are not accepted here.
      r.allowed = {{"gamma0", kNum},         {"alpha", kNum},
                   {"delta", kNum},          {"laser_detuning", kNum},
                   {"output", kWord},        {"initial_state", kWord},
                   {"gamma_star", kSweep},   {"t", kGrid},
                   {"separation", kNum}};
      r.required = {"initial_state", "t", "separation"};
      break;
    case Scenario::kThresholds:
      r.allowed = {{"gamma0", kNum}, {"omega12", kNum}, {"output", kWord}};
      break;
    case Scenario::kCoupling:
      r.allowed = {{"gamma0", kNum},
                   {"alpha", kNum},
                   {"output", kWord},
                   {"separation", kSweep},
                   {"target_omega12", kNum}};
      break;
  }
  return r;
}

std::string shape_description(const std::set<Kind>& kinds) {
  std::vector<std::string> names;
  for (Kind k : kinds) {
    switch (k) {
      case Kind::kScalar:
        names.emplace_back("a number");
        break;
      case Kind::kAxis:
        names.emplace_back("a grid");
        break;
      case Kind::kList:
        names.emplace_back("a list");
        break;
      case Kind::kToken:
        names.emplace_back("a word");
        break;
    }
  }
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += names.size() == 2 ? " or " : ", ";
    out += names[i];
  }
  return out;
}

void check_token_choices(const RunConfig& config, const std::string& key,
                         const std::set<std::string>& choices) {
  const ConfigValue* v = find_entry(config, key);
  if (!v) return;
  if (!choices.count(v->token)) {
    std::string opts;
    for (const auto& c : choices) {
      if (!opts.empty()) opts += ", ";
      opts += c;
    }
    throw ConfigError("key '" + key + "' must be one of: " + opts);
  }
}

}  // namespace

void validate_config(const RunConfig& config) {
  const std::string name = scenario_name(config.scenario);
  const ScenarioRules rules = rules_for(config.scenario);

  for (const auto& [key, value] : config.entries) {
    const auto it = rules.allowed.find(key);
    if (it == rules.allowed.end())
      throw ConfigError("key '" + key + "' is not valid for scenario '" +
                        name + "'");
    if (!it->second.count(value.kind))
      throw ConfigError("key '" + key + "' for scenario '" + name +
                        "' expects " + shape_description(it->second));
  }
  for (const auto& key : rules.required)
    if (!config.entries.count(key))
      throw ConfigError("scenario '" + name + "' requires key '" + key + "'");

  check_token_choices(config, "initial_state", {"G", "S", "A", "E"});
  check_token_choices(config, "excitation", {"two_photon", "superradiant"});
  check_token_choices(config, "method", {"auto", "resolvent", "quadrature"});

  if (config.scenario == Scenario::kCoupling &&
      find_entry(config, "separation") && find_entry(config, "target_omega12"))
    throw ConfigError(
        "scenario 'coupling' takes either 'separation' or 'target_omega12', "
        "not both");

  if (const ConfigValue* gs = find_entry(config, "gamma_star"))
    for (double v : gs->numbers())
      if (!(v >= 0.0))
        throw ConfigError("gamma_star values must be non-negative");

  if (const ConfigValue* t = find_entry(config, "t")) {
    const auto vals = t->numbers();
    if (!(vals.front() >= 0.0))
      throw ConfigError("t values must be non-negative");
    for (size_t i = 1; i < vals.size(); ++i)
      if (!(vals[i] > vals[i - 1]))
        throw ConfigError("t values must be strictly increasing");
  }

  if (const ConfigValue* sep = find_entry(config, "separation"))
    for (double v : sep->numbers())
      if (!(v > 0.0))
        throw ConfigError("separation values must be positive");

  // Physical ranges: reuse the parameter validation with representative
  // values from any sweeps.
  SystemParams p;
  p.gamma0 = get_scalar(config, "gamma0", p.gamma0);
  p.alpha = get_scalar(config, "alpha", p.alpha);
  p.delta = get_scalar(config, "delta", p.delta);
  p.laser_detuning = get_scalar(config, "laser_detuning", p.laser_detuning);
  if (config.scenario != Scenario::kG2Time) {
    p.omega12 = get_scalar(config, "omega12", p.omega12);
    p.gamma12 = get_scalar(config, "gamma12", p.gamma12);
  }
  if (const ConfigValue* gs = find_entry(config, "gamma_star"))
    p.gamma_star = gs->numbers().front();
  if (const ConfigValue* rabi = find_entry(config, "rabi"))
    p.set_rabi(rabi->numbers().front());
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  out << "scenario: " << scenario_name(config.scenario) << "\n";
  for (const auto& [key, value] : config.entries) {
    out << key << ": ";
    switch (value.kind) {
      case Kind::kScalar:
        out << format_number(value.scalar);
        break;
      case Kind::kAxis:
        out << '[' << format_number(value.axis.start) << ", "
            << format_number(value.axis.stop) << ", " << value.axis.count
            << (value.axis.log_scale ? " log" : "") << ']';
        break;
      case Kind::kList: {
        out << "list(";
        for (size_t i = 0; i < value.list.size(); ++i) {
          if (i > 0) out << ", ";
          out << format_number(value.list[i]);
        }
        out << ')';
        break;
      }
      case Kind::kToken:
        out << value.token;
        break;
    }
    out << "\n";
  }
  return out.str();
}

const ConfigValue* find_entry(const RunConfig& config, const std::string& key) {
  const auto it = config.entries.find(key);
  return it == config.entries.end() ? nullptr : &it->second;
}

double get_scalar(const RunConfig& config, const std::string& key,
                  double fallback) {
  const ConfigValue* v = find_entry(config, key);
  if (!v) return fallback;
  if (v->kind != Kind::kScalar)
    throw InvalidParameter("config key '" + key + "' is not a single number");
  return v->scalar;
}

std::string get_token(const RunConfig& config, const std::string& key,
                      const std::string& fallback) {
  const ConfigValue* v = find_entry(config, key);
  if (!v) return fallback;
  if (v->kind != Kind::kToken)
    throw InvalidParameter("config key '" + key + "' is not a word");
  return v->token;
}

std::vector<double> get_numbers(const RunConfig& config, const std::string& key,
                                double fallback) {
  const ConfigValue* v = find_entry(config, key);
  if (!v) return {fallback};
  return v->numbers();
}

}  // namespace dimersim

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dimersim/config.hpp"
#include "dimersim/errors.hpp"
#include "dimersim/presets.hpp"
#include "dimersim/runner.hpp"
#include "dimersim/version.hpp"

namespace {

// Exit codes: 0 success, 2 configuration or usage problem, 3 numerical
// failure, 4 I/O failure.
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& out_dir, int threads) {
  if (!preset.empty() && !config_path.empty())
    throw dimersim::ConfigError(
        "give either a configuration file or --preset, not both");
  if (preset.empty() && config_path.empty())
    throw dimersim::ConfigError(
        "a configuration file or --preset is required");
  const dimersim::RunConfig cfg = preset.empty()
                                      ? dimersim::parse_config_file(config_path)
                                      : dimersim::preset_config(preset);
  dimersim::RunOptions opts;
  opts.out_dir = out_dir;
  opts.threads = threads;
  const dimersim::RunResult result = dimersim::run_config(cfg, opts);
  std::cout << result.output_path << ": " << result.rows << " rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state and time-resolved emission observables of a "
               "dipole-coupled emitter pair"};
  app.set_version_flag("--version", std::string(dimersim::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "compute a scenario, write CSV");
  run->add_option("config", config_path, "configuration file");
  run->add_option("--out", out_dir, "output directory (created if missing)");
  run->add_option("--threads", threads,
                  "worker threads; 0 means machine parallelism");
  run->add_option("--preset", preset, "named preset instead of a file");

  CLI::App* presets =
      app.add_subcommand("presets", "list the built-in preset names");

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "check a configuration file");
  validate->add_option("config", validate_path, "configuration file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return run_command(config_path, preset, out_dir, threads);
    if (presets->parsed()) {
      for (const auto& name : dimersim::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (validate->parsed()) {
      dimersim::validate_config(dimersim::parse_config_file(validate_path));
      std::cout << validate_path << ": ok\n";
      return 0;
    }
  } catch (const dimersim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dimersim::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dimersim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dimersim::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}

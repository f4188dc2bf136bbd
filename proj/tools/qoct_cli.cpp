// Scenario-driven front end: parses declarative configs, runs the engines,
// and emits plot-ready CSV datasets plus a run manifest.
//
// Exit codes: 0 success, 2 config error, 3 engine contract violation, 4 I/O error.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qoct/scenario.hpp"
#include "qoct/version.hpp"

namespace {

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const qoct::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qoct::contract_error& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const qoct::io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum OCT interferogram simulator"};
  app.set_version_flag("--version", std::string(qoct::version_string));
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int points = 0;
  bool points_given = false;
  bool emit_only = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "Override the ensemble seed")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--points", points, "Override the delay-grid point count")
        ->each([&](const std::string&) { points_given = true; });
  };

  CLI::App* run = app.add_subcommand("run", "Run a scenario config file");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  add_common(run);

  CLI::App* pre = app.add_subcommand("preset", "Run a built-in scenario (fig3, fig4, hom)");
  pre->add_option("name", preset_name, "Preset name")->required();
  pre->add_flag("--emit-config", emit_only, "Print the preset's config instead of running it");
  add_common(pre);

  CLI::App* self = app.add_subcommand("selftest", "Run the built-in oracle checks");

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    qoct::RunOptions options;
    options.out_dir = out_dir;
    if (seed_given) options.seed = seed;
    if (points_given) options.points = points;

    if (run->parsed()) {
      const qoct::ScenarioConfig cfg = qoct::load_config(config_path);
      const qoct::RunResult result = qoct::run_scenario(cfg, options);
      for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
      return 0;
    }
    if (pre->parsed()) {
      const qoct::ScenarioConfig cfg = qoct::preset(preset_name);
      if (emit_only) {
        std::cout << qoct::emit_config(cfg);
        return 0;
      }
      const qoct::RunResult result = qoct::run_scenario(cfg, options);
      for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
      return 0;
    }
    if (self->parsed()) return qoct::selftest(std::cout) ? 0 : 1;
    return 1;
  });
}

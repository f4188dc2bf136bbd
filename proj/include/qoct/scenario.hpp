#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qoct/qoct.hpp"
#include "qoct/sample.hpp"
#include "qoct/spectrum.hpp"

namespace qoct {

struct LayerConfig {
  double r_re = 0.0;
  double r_im = 0.0;
  double z_m = 0.0;
};

struct DispersionConfig {
  bool match_source = false;         // omega_r_rad_s = "match_source"
  double omega_r_rad_s = 0.0;        // used when match_source is false
  double beta_r = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double beta4 = 0.0;
};

struct SourceConfig {
  double center_wavelength_m = 0.0;
  std::optional<double> bandwidth_fw1e_m;
  std::optional<std::string> tabulated_spectrum_path;
};

struct DelayAxisConfig {
  double min_m = 0.0;  // position units, x = tau v0 / 2
  double max_m = 0.0;
  int n_points = 0;
};

struct PumpAverageConfig {
  int n_points = 0;
  double span_rad_s = 0.0;
};

struct EnsembleConfig {
  int n_trials = 0;
  std::uint64_t seed = 0;
};

struct WignerConfig {
  double omega_half_range_rad_s = 0.0;
  int n_omega = 0;
  int n_centers = 0;  // centers spaced one Omega step apart around the source center
};

struct OutputsConfig {
  bool oct = false;
  bool qoct_full = false;
  bool qoct_self_only = false;
  std::optional<PumpAverageConfig> pump_average;
  std::optional<EnsembleConfig> ensemble;
  std::optional<WignerConfig> wigner;
};

struct ScenarioConfig {
  SourceConfig source;
  std::vector<LayerConfig> layers;
  DispersionConfig dispersion;
  DelayAxisConfig delay_axis;
  OutputsConfig outputs;
};

/// Strict parse: unknown keys are rejected by full path, missing required
/// keys by name.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical JSON for a config (keys sorted, stable across runs).
std::string emit_config(const ScenarioConfig& config);

/// fig3: two layers buried under a dispersive medium; fig4: the same pair with
/// the first layer at the surface; hom: a single surface mirror in vacuum.
ScenarioConfig preset(const std::string& name);

/// Physical objects resolved from a config.
struct ResolvedScenario {
  Spectrum spectrum;
  Sample sample;
  DelayGrid delays;
  double group_velocity = 0.0;  // at the source center
};

ResolvedScenario resolve(const ScenarioConfig& config);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides outputs.ensemble.seed
  std::optional<int> points;          // overrides delay_axis.n_points
};

struct RunResult {
  std::vector<std::filesystem::path> files;  // written CSVs plus the manifest
};

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options);

/// FNV-1a 64 over the given bytes, as printed in the manifest.
std::uint64_t fnv1a64(const std::string& bytes);

/// Runs the built-in oracle checks, printing one line each; true when all pass.
bool selftest(std::ostream& out);

}  // namespace qoct

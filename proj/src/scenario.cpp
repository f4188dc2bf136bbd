#include "qoct/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qoct/oct.hpp"
#include "qoct/version.hpp"
#include "qoct/wigner.hpp"

namespace qoct {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) throw config_error("unknown key \"" + path + it.key() + "\"");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw config_error("missing key \"" + path + key + "\"");
  return *it;
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) throw config_error("\"" + where + "\" must be a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw config_error("\"" + where + "\" must be an integer");
  return value.get<int>();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DispersionConfig parse_dispersion(const json& node, const std::string& path) {
  require_keys(node, path, {"omega_r_rad_s", "beta_r", "beta1", "beta2", "beta3", "beta4"});
  DispersionConfig dc;
  const json& omega_r = require(node, path, "omega_r_rad_s");
  if (omega_r.is_string()) {
    if (omega_r.get<std::string>() != "match_source")
      throw config_error("\"" + path + "omega_r_rad_s\" must be a number or \"match_source\"");
    dc.match_source = true;
  } else {
    dc.omega_r_rad_s = number(omega_r, path + "omega_r_rad_s");
  }
  dc.beta1 = number(require(node, path, "beta1"), path + "beta1");
  if (node.contains("beta_r")) dc.beta_r = number(node["beta_r"], path + "beta_r");
  if (node.contains("beta2")) dc.beta2 = number(node["beta2"], path + "beta2");
  if (node.contains("beta3")) dc.beta3 = number(node["beta3"], path + "beta3");
  if (node.contains("beta4")) dc.beta4 = number(node["beta4"], path + "beta4");
  return dc;
}

ScenarioConfig parse_json(const json& root) {
  require_keys(root, "", {"source", "sample", "delay_axis", "outputs"});
  ScenarioConfig cfg;

  const json& source = require(root, "", "source");
  require_keys(source, "source.",
               {"center_wavelength_m", "bandwidth_fw1e_m", "tabulated_spectrum_path"});
  cfg.source.center_wavelength_m =
      number(require(source, "source.", "center_wavelength_m"), "source.center_wavelength_m");
  if (source.contains("bandwidth_fw1e_m"))
    cfg.source.bandwidth_fw1e_m = number(source["bandwidth_fw1e_m"], "source.bandwidth_fw1e_m");
  if (source.contains("tabulated_spectrum_path")) {
    if (!source["tabulated_spectrum_path"].is_string())
      throw config_error("\"source.tabulated_spectrum_path\" must be a string");
    cfg.source.tabulated_spectrum_path = source["tabulated_spectrum_path"].get<std::string>();
  }
  if (cfg.source.bandwidth_fw1e_m.has_value() == cfg.source.tabulated_spectrum_path.has_value())
    throw config_error(
        "source requires exactly one of \"bandwidth_fw1e_m\" and \"tabulated_spectrum_path\"");

  const json& sample = require(root, "", "sample");
  require_keys(sample, "sample.", {"layers", "dispersion"});
  const json& layers = require(sample, "sample.", "layers");
  if (!layers.is_array()) throw config_error("\"sample.layers\" must be an array");
  for (size_t i = 0; i < layers.size(); ++i) {
    const std::string path = "sample.layers[" + std::to_string(i) + "].";
    require_keys(layers[i], path, {"r_re", "r_im", "z_m"});
    LayerConfig lc;
    lc.r_re = number(require(layers[i], path, "r_re"), path + "r_re");
    lc.r_im = number(require(layers[i], path, "r_im"), path + "r_im");
    lc.z_m = number(require(layers[i], path, "z_m"), path + "z_m");
    cfg.layers.push_back(lc);
  }
  cfg.dispersion = parse_dispersion(require(sample, "sample.", "dispersion"), "sample.dispersion.");

  const json& delay = require(root, "", "delay_axis");
  require_keys(delay, "delay_axis.", {"min_m", "max_m", "n_points"});
  cfg.delay_axis.min_m = number(require(delay, "delay_axis.", "min_m"), "delay_axis.min_m");
  cfg.delay_axis.max_m = number(require(delay, "delay_axis.", "max_m"), "delay_axis.max_m");
  cfg.delay_axis.n_points =
      integer(require(delay, "delay_axis.", "n_points"), "delay_axis.n_points");

  const json& outputs = require(root, "", "outputs");
  require_keys(outputs, "outputs.",
               {"oct", "qoct_full", "qoct_self_only", "pump_average", "ensemble", "wigner"});
  auto flag = [&](const char* key) {
    if (!outputs.contains(key)) return false;
    if (!outputs[key].is_boolean())
      throw config_error(std::string("\"outputs.") + key + "\" must be a boolean");
    return outputs[key].get<bool>();
  };
  cfg.outputs.oct = flag("oct");
  cfg.outputs.qoct_full = flag("qoct_full");
  cfg.outputs.qoct_self_only = flag("qoct_self_only");
  if (outputs.contains("pump_average")) {
    const json& pa = outputs["pump_average"];
    require_keys(pa, "outputs.pump_average.", {"n_points", "span_rad_s"});
    PumpAverageConfig pc;
    pc.n_points = integer(require(pa, "outputs.pump_average.", "n_points"),
                          "outputs.pump_average.n_points");
    pc.span_rad_s = number(require(pa, "outputs.pump_average.", "span_rad_s"),
                           "outputs.pump_average.span_rad_s");
    cfg.outputs.pump_average = pc;
  }
  if (outputs.contains("ensemble")) {
    const json& en = outputs["ensemble"];
    require_keys(en, "outputs.ensemble.", {"n_trials", "seed"});
    EnsembleConfig ec;
    ec.n_trials = integer(require(en, "outputs.ensemble.", "n_trials"), "outputs.ensemble.n_trials");
    const json& seed = require(en, "outputs.ensemble.", "seed");
    if (!seed.is_number_integer()) throw config_error("\"outputs.ensemble.seed\" must be an integer");
    ec.seed = seed.get<std::uint64_t>();
    cfg.outputs.ensemble = ec;
  }
  if (outputs.contains("wigner")) {
    const json& wn = outputs["wigner"];
    require_keys(wn, "outputs.wigner.", {"omega_half_range_rad_s", "n_omega", "n_centers"});
    WignerConfig wc;
    wc.omega_half_range_rad_s = number(require(wn, "outputs.wigner.", "omega_half_range_rad_s"),
                                       "outputs.wigner.omega_half_range_rad_s");
    wc.n_omega = integer(require(wn, "outputs.wigner.", "n_omega"), "outputs.wigner.n_omega");
    wc.n_centers = integer(require(wn, "outputs.wigner.", "n_centers"), "outputs.wigner.n_centers");
    cfg.outputs.wigner = wc;
  }
  return cfg;
}

json to_json(const ScenarioConfig& cfg) {
  json source;
  source["center_wavelength_m"] = cfg.source.center_wavelength_m;
  if (cfg.source.bandwidth_fw1e_m) source["bandwidth_fw1e_m"] = *cfg.source.bandwidth_fw1e_m;
  if (cfg.source.tabulated_spectrum_path)
    source["tabulated_spectrum_path"] = *cfg.source.tabulated_spectrum_path;

  json layers = json::array();
  for (const LayerConfig& lc : cfg.layers)
    layers.push_back({{"r_re", lc.r_re}, {"r_im", lc.r_im}, {"z_m", lc.z_m}});
  json dispersion;
  if (cfg.dispersion.match_source)
    dispersion["omega_r_rad_s"] = "match_source";
  else
    dispersion["omega_r_rad_s"] = cfg.dispersion.omega_r_rad_s;
  dispersion["beta_r"] = cfg.dispersion.beta_r;
  dispersion["beta1"] = cfg.dispersion.beta1;
  dispersion["beta2"] = cfg.dispersion.beta2;
  dispersion["beta3"] = cfg.dispersion.beta3;
  dispersion["beta4"] = cfg.dispersion.beta4;

  json outputs;
  outputs["oct"] = cfg.outputs.oct;
  outputs["qoct_full"] = cfg.outputs.qoct_full;
  outputs["qoct_self_only"] = cfg.outputs.qoct_self_only;
  if (cfg.outputs.pump_average)
    outputs["pump_average"] = {{"n_points", cfg.outputs.pump_average->n_points},
                               {"span_rad_s", cfg.outputs.pump_average->span_rad_s}};
  if (cfg.outputs.ensemble)
    outputs["ensemble"] = {{"n_trials", cfg.outputs.ensemble->n_trials},
                           {"seed", cfg.outputs.ensemble->seed}};
  if (cfg.outputs.wigner)
    outputs["wigner"] = {{"omega_half_range_rad_s", cfg.outputs.wigner->omega_half_range_rad_s},
                         {"n_omega", cfg.outputs.wigner->n_omega},
                         {"n_centers", cfg.outputs.wigner->n_centers}};

  return json{{"source", source},
              {"sample", {{"layers", layers}, {"dispersion", dispersion}}},
              {"delay_axis",
               {{"min_m", cfg.delay_axis.min_m},
                {"max_m", cfg.delay_axis.max_m},
                {"n_points", cfg.delay_axis.n_points}}},
              {"outputs", outputs}};
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw io_error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string interferogram_csv(const Interferogram& trace, const ArrayXd& normalized, double v0) {
  std::string out = "x_position_um,tau_s,value_normalized,value_raw\n";
  for (int k = 0; k < trace.delays.n_points; ++k) {
    const double tau = trace.delays.tau(k);
    out += fmt(tau * v0 * 0.5e6) + "," + fmt(tau) + "," + fmt(normalized[k]) + "," +
           fmt(trace.raw[k]) + "\n";
  }
  return out;
}

std::string wigner_csv(const WignerMap& map) {
  std::string out = "omega0_rad_s,tau_s,re,im\n";
  for (int m = 0; m < map.centers.n; ++m)
    for (int k = 0; k < map.delays.n_points; ++k)
      out += fmt(map.centers.at(m)) + "," + fmt(map.delays.tau(k)) + "," +
             fmt(map.values(m, k).real()) + "," + fmt(map.values(m, k).imag()) + "\n";
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  return parse_json(root);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const ScenarioConfig& config) { return to_json(config).dump(2) + "\n"; }

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  if (name == "hom") {
    cfg.source.center_wavelength_m = 812e-9;
    cfg.source.bandwidth_fw1e_m = 155e-9;
    cfg.layers = {{1.0, 0.0, 0.0}};
    cfg.dispersion.match_source = true;
    cfg.dispersion.beta_r = 0.0;
    cfg.dispersion.beta1 = 1.0 / speed_of_light;  // vacuum group velocity
    cfg.delay_axis = {-4e-6, 4e-6, 801};
    cfg.outputs.oct = true;
    cfg.outputs.qoct_full = true;
    return cfg;
  }
  if (name == "fig3" || name == "fig4") {
    cfg.source.center_wavelength_m = 812e-9;
    cfg.source.bandwidth_fw1e_m = 155e-9;
    const double d0 = name == "fig3" ? 1e-4 : 0.0;
    cfg.layers = {{0.1, 0.0, d0}, {0.2, 0.0, d0 + 1e-5}};
    cfg.dispersion.match_source = true;
    cfg.dispersion.beta1 = 5e-9;
    cfg.dispersion.beta2 = 1.8e-25;
    // Phase index matched to the group index at the center: beta_r = omega0 beta1.
    const double omega0 = 2.0 * M_PI * speed_of_light / cfg.source.center_wavelength_m;
    cfg.dispersion.beta_r = omega0 * cfg.dispersion.beta1;
    cfg.delay_axis = {d0 - 1e-5, d0 + 2e-5, 2001};
    cfg.outputs.oct = true;
    cfg.outputs.qoct_full = true;
    cfg.outputs.qoct_self_only = true;
    const double separation = 1e-5;
    cfg.outputs.pump_average =
        PumpAverageConfig{16, M_PI / (cfg.dispersion.beta1 * separation)};
    cfg.outputs.ensemble = EnsembleConfig{1000, 424242};
    return cfg;
  }
  throw config_error("unknown preset \"" + name + "\" (expected fig3, fig4, or hom)");
}

ResolvedScenario resolve(const ScenarioConfig& config) {
  const double lambda0 = config.source.center_wavelength_m;
  if (!(lambda0 > 0.0)) throw config_error("source.center_wavelength_m must be positive");
  const double omega0 = 2.0 * M_PI * speed_of_light / lambda0;

  Spectrum spectrum =
      config.source.bandwidth_fw1e_m
          ? gaussian_from_wavelength(lambda0, *config.source.bandwidth_fw1e_m)
          : load_tabulated_spectrum(*config.source.tabulated_spectrum_path, omega0);

  DispersionProfile dp;
  dp.omega_r = config.dispersion.match_source ? omega0 : config.dispersion.omega_r_rad_s;
  dp.beta_r = config.dispersion.beta_r;
  dp.beta1 = config.dispersion.beta1;
  dp.beta2 = config.dispersion.beta2;
  dp.beta3 = config.dispersion.beta3;
  dp.beta4 = config.dispersion.beta4;

  std::vector<Layer> layers;
  for (const LayerConfig& lc : config.layers) layers.push_back({cplx(lc.r_re, lc.r_im), lc.z_m});
  Sample sample(std::move(layers), dp);

  const double v0 = group_velocity(dp, omega0);
  const DelayGrid delays = make_delay_grid(2.0 * config.delay_axis.min_m / v0,
                                           2.0 * config.delay_axis.max_m / v0,
                                           config.delay_axis.n_points);
  return ResolvedScenario{std::move(spectrum), std::move(sample), delays, v0};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioConfig cfg = config;
  if (options.points) cfg.delay_axis.n_points = *options.points;
  if (options.seed && cfg.outputs.ensemble) cfg.outputs.ensemble->seed = *options.seed;

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw io_error("cannot create output directory " + options.out_dir.string());

  const ResolvedScenario rs = resolve(cfg);
  const double omega0 = rs.spectrum.center_frequency();
  const double v0 = rs.group_velocity;

  json manifest;
  manifest["version"] = std::string(version_string);
  manifest["timestamp_utc"] = timestamp_utc();
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64(emit_config(cfg))));
    manifest["config_hash_fnv1a64"] = buf;
  }
  manifest["config"] = json::parse(emit_config(cfg));

  const double dw = rs.spectrum.effective_half_width();
  json physics;
  physics["omega0_rad_s"] = omega0;
  physics["spectral_half_width_1e_rad_s"] = dw;
  physics["wavepacket_width_fw1e_of_s_s"] = 4.0 / dw;
  physics["wavepacket_width_fw1e_of_s_squared_s"] = 2.0 * std::sqrt(2.0) / dw;
  physics["group_velocity_m_s"] = v0;
  physics["beta0_rad_m"] = beta(rs.sample.dispersion(), omega0);
  physics["dispersion"] = {{"omega_r_rad_s", rs.sample.dispersion().omega_r},
                           {"beta_r", rs.sample.dispersion().beta_r},
                           {"beta1", rs.sample.dispersion().beta1},
                           {"beta2", rs.sample.dispersion().beta2},
                           {"beta3", rs.sample.dispersion().beta3},
                           {"beta4", rs.sample.dispersion().beta4}};
  json layer_list = json::array();
  for (const Layer& l : rs.sample.layers())
    layer_list.push_back({{"r_re", l.r.real()}, {"r_im", l.r.imag()}, {"z_m", l.z}});
  physics["layers"] = layer_list;
  physics["freq_grid"] = {{"half_range_rad_s", rs.spectrum.grid().half_range},
                          {"n_points", rs.spectrum.grid().n_points}};
  physics["delay_grid"] = {{"tau_min_s", rs.delays.tau_min},
                           {"tau_max_s", rs.delays.tau_max},
                           {"n_points", rs.delays.n_points},
                           {"nyquist_envelope_ok", rs.delays.resolves(rs.spectrum.grid().half_range)}};
  manifest["physics"] = physics;

  RunResult result;
  json traces = json::array();
  auto emit = [&](const std::string& file, const Interferogram& trace, const ArrayXd& normalized,
                  const char* engine, const char* path_name, json extra = json::object()) {
    const std::filesystem::path out = options.out_dir / file;
    write_atomic(out, interferogram_csv(trace, normalized, v0));
    result.files.push_back(out);
    json entry = {{"file", file},
                  {"engine", engine},
                  {"path", path_name},
                  {"self_term", trace.self_term},
                  {"norm_rule", trace.norm_rule}};
    for (auto& [k, v] : extra.items()) entry[k] = v;
    traces.push_back(entry);
  };

  if (cfg.outputs.oct) {
    const Interferogram trace =
        oct_interferogram(rs.sample, rs.spectrum, rs.delays, OctOutput::envelope);
    emit("oct.csv", trace, trace.normalized(), "oct_envelope", "quadrature");
  }
  if (cfg.outputs.qoct_full) {
    const Interferogram trace =
        qoct_coincidence(rs.sample, rs.spectrum, rs.delays, QoctMode::full, TracePath::quadrature);
    emit("qoct_full.csv", trace, trace.normalized(), "qoct_coincidence", "quadrature");
  }
  if (cfg.outputs.qoct_self_only) {
    const Interferogram trace = qoct_coincidence(rs.sample, rs.spectrum, rs.delays,
                                                 QoctMode::self_only, TracePath::quadrature);
    emit("qoct_self.csv", trace, trace.normalized(), "qoct_coincidence_self_only", "quadrature");
  }
  if (cfg.outputs.pump_average) {
    const PumpSweep sweep = make_pump_sweep(omega0, cfg.outputs.pump_average->n_points,
                                            cfg.outputs.pump_average->span_rad_s);
    const Interferogram trace = pump_averaged_coincidence(rs.sample, rs.spectrum, rs.delays, sweep);
    emit("qoct_pump_avg.csv", trace, trace.normalized(), "qoct_pump_averaged", "closed",
         {{"pump", {{"center_rad_s", sweep.center},
                    {"span_rad_s", sweep.span},
                    {"n_points", sweep.n_points}}}});
  }
  if (cfg.outputs.ensemble) {
    const EnsembleSpec spec{cfg.outputs.ensemble->n_trials, cfg.outputs.ensemble->seed};
    const EnsembleTrace ens = random_phase_ensemble(rs.sample, rs.spectrum, rs.delays, spec);
    const json extra = {{"ensemble", {{"n_trials", spec.n_trials}, {"seed", spec.seed}}}};
    emit("qoct_ensemble_mean.csv", ens.mean, ens.mean.normalized(), "qoct_ensemble_mean", "closed",
         extra);
    Interferogram std_trace{ens.mean.delays, ens.stddev * ens.mean.self_term,
                            TraceKind::qoct_coincidence, ens.mean.self_term};
    emit("qoct_ensemble_std.csv", std_trace, ens.stddev, "qoct_ensemble_std", "closed", extra);
  }
  if (cfg.outputs.wigner) {
    const WignerConfig& wc = *cfg.outputs.wigner;
    const double dw_map = 2.0 * wc.omega_half_range_rad_s / wc.n_omega;
    const UniformGrid centers{omega0 - dw_map * ((wc.n_centers - 1) / 2), dw_map, wc.n_centers};
    const DelayGrid wdelays = conjugate_delay_grid(wc.omega_half_range_rad_s, wc.n_omega);
    const WignerMap map =
        wigner_map(rs.sample, wdelays, centers, wc.omega_half_range_rad_s, wc.n_omega);
    const std::filesystem::path out = options.out_dir / "wigner.csv";
    write_atomic(out, wigner_csv(map));
    result.files.push_back(out);
    traces.push_back({{"file", "wigner.csv"},
                      {"engine", "wigner_map"},
                      {"path", "quadrature"},
                      {"wigner",
                       {{"omega_half_range_rad_s", wc.omega_half_range_rad_s},
                        {"n_omega", wc.n_omega},
                        {"centers", {{"first_rad_s", centers.first},
                                     {"step_rad_s", centers.step},
                                     {"n", centers.n}}},
                        {"delays", {{"tau_min_s", wdelays.tau_min},
                                    {"tau_max_s", wdelays.tau_max},
                                    {"n_points", wdelays.n_points}}}}}});
  }

  manifest["traces"] = traces;
  const std::filesystem::path manifest_path = options.out_dir / "manifest.json";
  write_atomic(manifest_path, manifest.dump(2) + "\n");
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace qoct

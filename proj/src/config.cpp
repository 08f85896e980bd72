#include "cmrisps/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace cmrisps {
namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() +
                                  "' in " + where);
}

SourceSpec parse_source(const json& j, const std::string& where) {
  check_keys(j, {"doa_deg", "power_db", "doa_jitter_deg", "motion"}, where);
  SourceSpec s;
  s.doa_deg = j.value("doa_deg", 0.0);
  s.power_db = j.value("power_db", 0.0);
  s.doa_jitter_deg = j.value("doa_jitter_deg", 0.0);
  if (j.contains("motion")) {
    const json& m = j.at("motion");
    check_keys(m, {"rate_deg_per_snapshot", "accel_deg_per_snapshot2"},
               where + ".motion");
    Motion mo;
    mo.rate_deg_per_snapshot = m.value("rate_deg_per_snapshot", 0.0);
    mo.accel_deg_per_snapshot2 = m.value("accel_deg_per_snapshot2", 0.0);
    s.motion = mo;
  }
  return s;
}

Scenario parse_scenario(const json& j) {
  check_keys(j,
             {"m", "spacing_wavelengths", "array_error", "soi", "interferers",
              "snapshots", "scattering", "seed", "jitter_per_snapshot"},
             "scenario");
  Scenario scn = default_scenario();
  scn.m = j.value("m", scn.m);
  scn.spacing_wavelengths =
      j.value("spacing_wavelengths", scn.spacing_wavelengths);
  if (j.contains("array_error")) {
    const std::string kind = j.at("array_error");
    if (kind == "ideal")
      scn.array_error = ArrayErrorKind::ideal;
    else if (kind == "geometry")
      scn.array_error = ArrayErrorKind::geometry;
    else if (kind == "gainphase")
      scn.array_error = ArrayErrorKind::gainphase;
    else
      throw std::invalid_argument("config: bad array_error '" + kind + "'");
  }
  if (j.contains("soi")) scn.soi = parse_source(j.at("soi"), "soi");
  if (j.contains("interferers")) {
    scn.interferers.clear();
    int idx = 0;
    for (const json& it : j.at("interferers"))
      scn.interferers.push_back(
          parse_source(it, "interferers[" + std::to_string(idx++) + "]"));
  }
  scn.snapshots = j.value("snapshots", scn.snapshots);
  scn.seed = j.value("seed", scn.seed);
  scn.jitter_per_snapshot =
      j.value("jitter_per_snapshot", scn.jitter_per_snapshot);
  if (j.contains("scattering")) {
    const json& sc = j.at("scattering");
    check_keys(sc, {"paths", "spread_deg"}, "scattering");
    ScatteringSpec spec;
    spec.paths = sc.value("paths", spec.paths);
    spec.spread_deg = sc.value("spread_deg", spec.spread_deg);
    scn.scattering = spec;
  }
  scn.validate();
  return scn;
}

PipelineConfig parse_pipeline(const json& j) {
  check_keys(j,
             {"grid_points", "soi_center_deg", "soi_half_width_deg",
              "presumed_doa_deg", "margin_deg", "scan_half_width_deg",
              "scan_step_deg", "peak_threshold_db", "interferer_count",
              "cg_tol", "cg_max_iter"},
             "pipeline");
  PipelineConfig cfg;
  cfg.grid_points = j.value("grid_points", cfg.grid_points);
  cfg.soi_sector.center_deg =
      j.value("soi_center_deg", cfg.soi_sector.center_deg);
  cfg.soi_sector.half_width_deg =
      j.value("soi_half_width_deg", cfg.soi_sector.half_width_deg);
  cfg.presumed_doa_deg = j.value("presumed_doa_deg", cfg.presumed_doa_deg);
  cfg.margin_deg = j.value("margin_deg", cfg.margin_deg);
  cfg.tracker.scan_half_width_deg =
      j.value("scan_half_width_deg", cfg.tracker.scan_half_width_deg);
  cfg.tracker.scan_step_deg =
      j.value("scan_step_deg", cfg.tracker.scan_step_deg);
  cfg.tracker.peak_threshold_db =
      j.value("peak_threshold_db", cfg.tracker.peak_threshold_db);
  if (j.contains("interferer_count"))
    cfg.interferer_count_override = j.at("interferer_count").get<int>();
  cfg.cg_tol = j.value("cg_tol", cfg.cg_tol);
  cfg.cg_max_iter = j.value("cg_max_iter", cfg.cg_max_iter);
  return cfg;
}

void parse_sweep(const json& j, SweepSpec& sw) {
  check_keys(j, {"axis_name", "axis", "trials", "methods", "master_seed",
                 "threads"},
             "sweep");
  sw.axis_name = j.value("axis_name", sw.axis_name);
  if (j.contains("axis")) sw.axis = j.at("axis").get<std::vector<double>>();
  sw.trials = j.value("trials", sw.trials);
  if (j.contains("methods"))
    sw.methods = j.at("methods").get<std::vector<std::string>>();
  sw.master_seed = j.value("master_seed", sw.master_seed);
  sw.threads = j.value("threads", sw.threads);
}

RunConfig parse_json(const json& j) {
  check_keys(j, {"scenario", "pipeline", "sweep"}, "top level");
  RunConfig cfg = default_config();
  if (j.contains("scenario")) cfg.scenario = parse_scenario(j.at("scenario"));
  if (j.contains("pipeline")) cfg.pipeline = parse_pipeline(j.at("pipeline"));
  if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg.sweep);
  cfg.sweep.scenario = cfg.scenario;
  cfg.sweep.pipeline = cfg.pipeline;
  return cfg;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.scenario = default_scenario();
  cfg.sweep.scenario = cfg.scenario;
  cfg.sweep.pipeline = cfg.pipeline;
  cfg.sweep.axis = {-20, -15, -10, -5, 0, 5, 10, 15, 20};
  return cfg;
}

RunConfig parse_config(const std::string& json_text) {
  return parse_json(nlohmann::json::parse(json_text));
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return parse_json(j);
}

}  // namespace cmrisps

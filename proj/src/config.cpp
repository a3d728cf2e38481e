#include "cforge/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cforge/errors.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw validation_error("config: unknown key \"" + scope + key + "\"");
    }
  }
}

const json* find(const json& object, const char* key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double number_field(const json& object, const char* key, const std::string& scope,
                    bool required, double fallback) {
  const json* value = find(object, key);
  if (value == nullptr) {
    if (required) throw validation_error("config: missing key \"" + scope + key + "\"");
    return fallback;
  }
  if (!value->is_number()) {
    throw validation_error("config: \"" + scope + key + "\" must be a number");
  }
  return value->get<double>();
}

json parse_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error(std::string(what) + " file not found: " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw validation_error(std::string(what) + " " + path.string() +
                           ": " + err.what());
  }
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

json RunConfig::canonical() const {
  json plan;
  plan["tau_ps"] = tau_ps;
  plan["t_start_ps"] = t_start_ps;
  plan["t_stop_ps"] = t_stop_ps;
  plan["t_step_ps"] = t_step_ps;
  plan["omega_rf_thz"] = omega_rf_thz;
  plan["omega_t_min_thz"] = omega_t_min_thz;
  plan["omega_t_max_thz"] = omega_t_max_thz;
  plan["omega_t_points"] = omega_t_points;
  json frames = json::array();
  for (const auto& f : phase_frames) frames.push_back({f.phi1, f.phi1_prime});
  plan["phase_frames"] = std::move(frames);
  plan["pfid"] = pfid;
  plan["noise_sigma"] = noise_sigma;

  json pipeline;
  pipeline["zero_pad"] = zero_pad;
  pipeline["threshold_rel"] = threshold_rel;
  pipeline["calibration_thz"] = calibration_thz;
  pipeline["tolerance_thz"] = tolerance_thz;

  json out;
  out["plan"] = std::move(plan);
  out["pipeline"] = std::move(pipeline);
  out["scheme"] = scheme_json;
  out["seed"] = seed;
  return out;
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical().dump())));
  return buf;
}

RunConfig load_config(const std::filesystem::path& path) {
  const json root = parse_file(path, "config");
  if (!root.is_object()) throw validation_error("config: top level must be an object");
  reject_unknown_keys(root, {"scheme", "plan", "pipeline", "output_dir", "seed"}, "");

  RunConfig config;
  config.config_path = path;

  const json* scheme = find(root, "scheme");
  if (scheme == nullptr || !scheme->is_string()) {
    throw validation_error("config: \"scheme\" must be a path string");
  }
  config.scheme_path = path.parent_path() / scheme->get<std::string>();
  config.scheme_json = parse_file(config.scheme_path, "scheme");

  const json* plan = find(root, "plan");
  if (plan == nullptr || !plan->is_object()) {
    throw validation_error("config: \"plan\" must be an object");
  }
  reject_unknown_keys(*plan,
                      {"tau_ps", "t_start_ps", "t_stop_ps", "t_step_ps", "omega_rf_thz",
                       "omega_t_min_thz", "omega_t_max_thz", "omega_t_points",
                       "phase_frames", "pfid", "noise_sigma"},
                      "plan.");
  config.tau_ps = number_field(*plan, "tau_ps", "plan.", false, 0.0);
  config.t_start_ps = number_field(*plan, "t_start_ps", "plan.", false, 0.0);
  config.t_stop_ps = number_field(*plan, "t_stop_ps", "plan.", true, 0.0);
  config.t_step_ps = number_field(*plan, "t_step_ps", "plan.", true, 0.0);
  config.omega_rf_thz = number_field(*plan, "omega_rf_thz", "plan.", true, 0.0);
  config.omega_t_min_thz = number_field(*plan, "omega_t_min_thz", "plan.", true, 0.0);
  config.omega_t_max_thz = number_field(*plan, "omega_t_max_thz", "plan.", true, 0.0);
  {
    const double points = number_field(*plan, "omega_t_points", "plan.", true, 0.0);
    if (!(points >= 2.0) || points != std::floor(points)) {
      throw validation_error("config: \"plan.omega_t_points\" must be an integer >= 2");
    }
    config.omega_t_points = static_cast<std::size_t>(points);
  }
  if (const json* frames = find(*plan, "phase_frames")) {
    if (!frames->is_array() || frames->empty()) {
      throw validation_error("config: \"plan.phase_frames\" must be a nonempty array");
    }
    for (const auto& entry : *frames) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw validation_error(
            "config: \"plan.phase_frames\" entries must be [phi1, phi1'] in radians");
      }
      config.phase_frames.push_back(
          PhaseFrame{entry[0].get<double>(), entry[1].get<double>()});
    }
  } else {
    config.phase_frames = four_frame_cycle();
  }
  if (const json* flag = find(*plan, "pfid")) {
    if (!flag->is_boolean()) throw validation_error("config: \"plan.pfid\" must be a bool");
    config.pfid = flag->get<bool>();
  }
  config.noise_sigma = number_field(*plan, "noise_sigma", "plan.", false, 0.0);
  if (config.noise_sigma < 0.0) {
    throw validation_error("config: \"plan.noise_sigma\" must be >= 0");
  }

  if (const json* pipeline = find(root, "pipeline")) {
    if (!pipeline->is_object()) {
      throw validation_error("config: \"pipeline\" must be an object");
    }
    reject_unknown_keys(
        *pipeline, {"zero_pad", "threshold_rel", "calibration_thz", "tolerance_thz"},
        "pipeline.");
    const double pad = number_field(*pipeline, "zero_pad", "pipeline.", false, 4.0);
    if (!(pad >= 1.0) || pad != std::floor(pad)) {
      throw validation_error("config: \"pipeline.zero_pad\" must be an integer >= 1");
    }
    config.zero_pad = static_cast<std::size_t>(pad);
    config.threshold_rel =
        number_field(*pipeline, "threshold_rel", "pipeline.", false, 0.05);
    if (!(config.threshold_rel > 0.0) || !(config.threshold_rel < 1.0)) {
      throw validation_error("config: \"pipeline.threshold_rel\" must lie in (0,1)");
    }
    config.calibration_thz =
        number_field(*pipeline, "calibration_thz", "pipeline.", false, 0.0);
    config.tolerance_thz = number_field(*pipeline, "tolerance_thz", "pipeline.", false, 0.0);
    if (config.tolerance_thz < 0.0) {
      throw validation_error("config: \"pipeline.tolerance_thz\" must be >= 0");
    }
  }

  // Unlike the scheme path, output_dir is relative to the working directory.
  if (const json* out_dir = find(root, "output_dir")) {
    if (!out_dir->is_string()) {
      throw validation_error("config: \"output_dir\" must be a string");
    }
    config.output_dir = out_dir->get<std::string>();
  }
  if (const json* seed = find(root, "seed")) {
    if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
      throw validation_error("config: \"seed\" must be an integer");
    }
    config.seed = seed->get<std::uint64_t>();
  }

  if (!(config.t_step_ps > 0.0)) {
    throw validation_error("config: \"plan.t_step_ps\" must be > 0");
  }
  if (!(config.t_stop_ps > config.t_start_ps)) {
    throw validation_error("config: \"plan.t_stop_ps\" must exceed t_start_ps");
  }
  if (!(config.omega_t_max_thz > config.omega_t_min_thz)) {
    throw validation_error("config: \"plan.omega_t_max_thz\" must exceed omega_t_min_thz");
  }
  if (config.tolerance_thz == 0.0) {
    config.tolerance_thz = 1.0 / (config.t_stop_ps - config.t_start_ps);
  }
  return config;
}

ExperimentPlan plan_from_config(const RunConfig& config, const LevelScheme& scheme,
                                const std::vector<Pathway>& pathways) {
  ExperimentPlan plan;
  plan.tau = config.tau_ps;
  const double span = config.t_stop_ps - config.t_start_ps;
  const auto count = static_cast<std::size_t>(std::llround(span / config.t_step_ps)) + 1;
  const double reached =
      config.t_start_ps + config.t_step_ps * static_cast<double>(count - 1);
  if (std::abs(reached - config.t_stop_ps) > 1e-9 * std::max(1.0, span)) {
    throw validation_error("config: T scan range is not a whole number of steps");
  }
  plan.t_grid = uniform_axis(config.t_start_ps, config.t_step_ps, count);
  plan.omega_rf = thz_to_rad_ps(config.omega_rf_thz);
  plan.frames = config.phase_frames;
  const double step_thz = (config.omega_t_max_thz - config.omega_t_min_thz) /
                          static_cast<double>(config.omega_t_points - 1);
  plan.omega_t_grid = uniform_axis(thz_to_rad_ps(config.omega_t_min_thz),
                                   thz_to_rad_ps(step_thz), config.omega_t_points);
  plan.contamination.pfid = config.pfid;
  plan.contamination.noise_sigma = config.noise_sigma;
  plan.seed = config.seed;
  return validated_plan(std::move(plan), scheme, pathways);
}

}  // namespace cforge

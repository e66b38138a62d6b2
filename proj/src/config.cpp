#include "gtrack/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gtrack/errors.hpp"

namespace gtrack {

OrbitalElements InitialOrbitConfig::elements() const {
  OrbitalElements el;
  el.semi_major_axis = semi_major_axis;
  el.eccentricity = eccentricity;
  el.inclination = inclination;
  el.raan = raan;
  el.arg_periapsis = arg_periapsis;
  el.anomaly = true_anomaly;
  el.anomaly_kind = AnomalyKind::True;
  el.variant = variant;
  return el;
}

void ScenarioConfig::validate() const {
  initial.elements().validate();
  if (initial.eccentricity >= 0.1)
    throw ConfigError("initial orbit: e >= 0.1 is outside the near-circular regime");
  body.validate();
  env.validate();
  gps.validate();
  thruster.validate();
  target.validate();
  if (!(control.forgetting > 0.0 && control.forgetting <= 1.0))
    throw ConfigError("control.eta must be in (0, 1]");
  if (control.warmup_days < 0.0) throw ConfigError("control.warmup_days must be >= 0");
  if (control.burn_orbits < 1) throw ConfigError("control.burn_orbits must be >= 1");
  if (!(duration_days > 0.0)) throw ConfigError("sim.duration_days must be positive");
  if (!(tick > 0.0)) throw ConfigError("sim.tick_s must be positive");
  if (mode == SimMode::Full) {
    if (std::abs(gps.update_period - tick) > 1e-9 ||
        std::abs(thruster.update_period - tick) > 1e-9)
      throw ConfigError("gps/thruster update periods must equal the control tick");
  }
  if (drag_force_target < 0.0) throw ConfigError("sim.drag_force_target_n must be >= 0");
}

ScenarioConfig default_case_study() {
  return ScenarioConfig{};  // defaults are the Tables 1-3 surrogate values
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value '" + value + "' for key '" + key + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value '" + value + "' for key '" + key + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean value '" + value + "' for key '" + key + "'");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void apply_config_line(ScenarioConfig& c, const std::string& key, const std::string& value) {
  using Handler = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

  static const std::map<std::string, Handler> handlers = {
      {"initial.a_m", [](auto& c, auto& k, auto& v) { c.initial.semi_major_axis = parse_double(k, v); }},
      {"initial.e", [](auto& c, auto& k, auto& v) { c.initial.eccentricity = parse_double(k, v); }},
      {"initial.i_deg", [](auto& c, auto& k, auto& v) { c.initial.inclination = parse_double(k, v) * kDegToRad; }},
      {"initial.raan_deg", [](auto& c, auto& k, auto& v) { c.initial.raan = parse_double(k, v) * kDegToRad; }},
      {"initial.argp_deg", [](auto& c, auto& k, auto& v) { c.initial.arg_periapsis = parse_double(k, v) * kDegToRad; }},
      {"initial.true_anomaly_deg", [](auto& c, auto& k, auto& v) { c.initial.true_anomaly = parse_double(k, v) * kDegToRad; }},
      {"initial.variant",
       [](auto& c, auto& k, auto& v) {
         if (v == "mean") c.initial.variant = ElementVariant::Mean;
         else if (v == "osculating") c.initial.variant = ElementVariant::Osculating;
         else throw ConfigError("config: initial.variant must be mean|osculating, got '" + v + "'");
       }},
      {"body.mass_kg", [](auto& c, auto& k, auto& v) { c.body.mass = parse_double(k, v); }},
      {"body.drag_area_m2", [](auto& c, auto& k, auto& v) { c.body.drag_area = parse_double(k, v); }},
      {"body.drag_coeff", [](auto& c, auto& k, auto& v) { c.body.drag_coeff = parse_double(k, v); }},
      {"body.srp_area_m2", [](auto& c, auto& k, auto& v) { c.body.srp_area = parse_double(k, v); }},
      {"body.reflectivity_coeff", [](auto& c, auto& k, auto& v) { c.body.reflectivity_coeff = parse_double(k, v); }},
      {"env.zonal_degree", [](auto& c, auto& k, auto& v) { c.env.zonal_degree = static_cast<int>(parse_long(k, v)); }},
      {"env.density_ref_kg_m3", [](auto& c, auto& k, auto& v) { c.env.density_ref = parse_double(k, v); }},
      {"env.ref_altitude_m", [](auto& c, auto& k, auto& v) { c.env.ref_altitude = parse_double(k, v); }},
      {"env.scale_height_m", [](auto& c, auto& k, auto& v) { c.env.scale_height = parse_double(k, v); }},
      {"env.diurnal_amplitude", [](auto& c, auto& k, auto& v) { c.env.diurnal_amplitude = parse_double(k, v); }},
      {"env.diurnal_lag_deg", [](auto& c, auto& k, auto& v) { c.env.diurnal_lag = parse_double(k, v) * kDegToRad; }},
      {"env.sun_enabled", [](auto& c, auto& k, auto& v) { c.env.sun_enabled = parse_bool(k, v); }},
      {"env.moon_enabled", [](auto& c, auto& k, auto& v) { c.env.moon_enabled = parse_bool(k, v); }},
      {"env.srp_enabled", [](auto& c, auto& k, auto& v) { c.env.srp_enabled = parse_bool(k, v); }},
      {"env.srp_pressure_n_m2", [](auto& c, auto& k, auto& v) { c.env.srp_pressure = parse_double(k, v); }},
      {"env.epoch_jd", [](auto& c, auto& k, auto& v) { c.env.epoch_jd = parse_double(k, v); }},
      {"gps.position_sigma_m", [](auto& c, auto& k, auto& v) { c.gps.position_sigma = parse_double(k, v); }},
      {"gps.velocity_sigma_m_s", [](auto& c, auto& k, auto& v) { c.gps.velocity_sigma = parse_double(k, v); }},
      {"gps.update_period_s", [](auto& c, auto& k, auto& v) { c.gps.update_period = parse_double(k, v); }},
      {"thruster.nominal_force_n", [](auto& c, auto& k, auto& v) { c.thruster.nominal_force = parse_double(k, v); }},
      {"thruster.force_sigma_n", [](auto& c, auto& k, auto& v) { c.thruster.force_sigma = parse_double(k, v); }},
      {"thruster.update_period_s", [](auto& c, auto& k, auto& v) { c.thruster.update_period = parse_double(k, v); }},
      {"target.repeat_days", [](auto& c, auto& k, auto& v) { c.target.repeat_ratio_num = parse_long(k, v); }},
      {"target.repeat_revs", [](auto& c, auto& k, auto& v) { c.target.repeat_ratio_den = parse_long(k, v); }},
      {"target.longitude_deg",
       [](auto& c, auto& k, auto& v) {
         if (v == "auto") {
           c.auto_target_longitude = true;
         } else {
           c.auto_target_longitude = false;
           c.target.target_longitude = parse_double(k, v) * kDegToRad;
         }
       }},
      {"target.greenwich_epoch_deg", [](auto& c, auto& k, auto& v) { c.target.greenwich_epoch_longitude = parse_double(k, v) * kDegToRad; }},
      {"target.x_lim_rad", [](auto& c, auto& k, auto& v) { c.target.error_tolerance = parse_double(k, v); }},
      {"control.eta", [](auto& c, auto& k, auto& v) { c.control.forgetting = parse_double(k, v); }},
      {"control.warmup_days", [](auto& c, auto& k, auto& v) { c.control.warmup_days = parse_double(k, v); }},
      {"control.burn_orbits", [](auto& c, auto& k, auto& v) { c.control.burn_orbits = parse_long(k, v); }},
      {"control.half_period_mode", [](auto& c, auto& k, auto& v) { c.control.half_period_mode = parse_bool(k, v); }},
      {"control.f0_deg", [](auto& c, auto& k, auto& v) { c.control.f0_target = parse_double(k, v) * kDegToRad; }},
      {"control.f0_tolerance_deg", [](auto& c, auto& k, auto& v) { c.control.f0_tolerance = parse_double(k, v) * kDegToRad; }},
      {"control.alpha_margin_rad", [](auto& c, auto& k, auto& v) { c.control.alpha_margin = parse_double(k, v); }},
      {"control.p_min", [](auto& c, auto& k, auto& v) { c.control.p_min = parse_double(k, v); }},
      {"control.p_max_fraction", [](auto& c, auto& k, auto& v) { c.control.p_max_fraction = parse_double(k, v); }},
      {"control.rls_p0_curvature", [](auto& c, auto& k, auto& v) { c.control.rls_p0[0] = parse_double(k, v); }},
      {"control.rls_p0_slope", [](auto& c, auto& k, auto& v) { c.control.rls_p0[1] = parse_double(k, v); }},
      {"control.rls_p0_offset", [](auto& c, auto& k, auto& v) { c.control.rls_p0[2] = parse_double(k, v); }},
      {"control.rls_time_scale_s", [](auto& c, auto& k, auto& v) { c.control.rls_time_scale = parse_double(k, v); }},
      {"di.p", [](auto& c, auto& k, auto& v) { c.di.p = parse_double(k, v); }},
      {"di.k", [](auto& c, auto& k, auto& v) { c.di.k = parse_double(k, v); }},
      {"di.y_lim", [](auto& c, auto& k, auto& v) { c.di.y_lim = parse_double(k, v); }},
      {"di.use_estimator", [](auto& c, auto& k, auto& v) { c.di.use_estimator = parse_bool(k, v); }},
      {"di.noise_sigma_rad", [](auto& c, auto& k, auto& v) { c.di.noise_sigma = parse_double(k, v); }},
      {"sim.mode",
       [](auto& c, auto& k, auto& v) {
         if (v == "full") c.mode = SimMode::Full;
         else if (v == "double-integrator") c.mode = SimMode::DoubleIntegrator;
         else throw ConfigError("config: sim.mode must be full|double-integrator, got '" + v + "'");
       }},
      {"sim.duration_days", [](auto& c, auto& k, auto& v) { c.duration_days = parse_double(k, v); }},
      {"sim.tick_s", [](auto& c, auto& k, auto& v) { c.tick = parse_double(k, v); }},
      {"sim.seed", [](auto& c, auto& k, auto& v) { c.seed = static_cast<std::uint64_t>(parse_long(k, v)); }},
      {"sim.drag_force_target_n", [](auto& c, auto& k, auto& v) { c.drag_force_target = parse_double(k, v); }},
      {"sim.output_path", [](auto& c, auto&, auto& v) { c.output_path = v; }},
  };

  const auto it = handlers.find(key);
  if (it == handlers.end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second(c, key, value);
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");

  ScenarioConfig config = default_case_study();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " of '" + path +
                        "' is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at line " + std::to_string(line_no) +
                        " of '" + path + "'");
    apply_config_line(config, key, value);
  }
  return config;
}

std::string config_file_template() {
  const ScenarioConfig c = default_case_study();
  std::ostringstream os;
  os.precision(15);
  os << "# Repeat-groundtrack maintenance scenario (case-study defaults).\n"
     << "# Angles are degrees where the key says _deg, radians where it says _rad.\n\n"
     << "initial.a_m = " << c.initial.semi_major_axis << "\n"
     << "initial.e = " << c.initial.eccentricity << "\n"
     << "initial.i_deg = " << c.initial.inclination / kDegToRad << "\n"
     << "initial.raan_deg = " << c.initial.raan / kDegToRad << "\n"
     << "initial.argp_deg = " << c.initial.arg_periapsis / kDegToRad << "\n"
     << "initial.true_anomaly_deg = " << c.initial.true_anomaly / kDegToRad << "\n"
     << "initial.variant = mean\n\n"
     << "body.mass_kg = " << c.body.mass << "\n"
     << "body.drag_area_m2 = " << c.body.drag_area << "\n"
     << "body.drag_coeff = " << c.body.drag_coeff << "\n"
     << "body.srp_area_m2 = " << c.body.srp_area << "\n"
     << "body.reflectivity_coeff = " << c.body.reflectivity_coeff << "\n\n"
     << "env.zonal_degree = " << c.env.zonal_degree << "\n"
     << "env.density_ref_kg_m3 = " << c.env.density_ref << "\n"
     << "env.ref_altitude_m = " << c.env.ref_altitude << "\n"
     << "env.scale_height_m = " << c.env.scale_height << "\n"
     << "env.diurnal_amplitude = " << c.env.diurnal_amplitude << "\n"
     << "env.diurnal_lag_deg = " << c.env.diurnal_lag / kDegToRad << "\n"
     << "env.sun_enabled = true\n"
     << "env.moon_enabled = true\n"
     << "env.srp_enabled = true\n"
     << "env.srp_pressure_n_m2 = " << c.env.srp_pressure << "\n"
     << "env.epoch_jd = " << c.env.epoch_jd << "\n\n"
     << "gps.position_sigma_m = " << c.gps.position_sigma << "\n"
     << "gps.velocity_sigma_m_s = " << c.gps.velocity_sigma << "\n"
     << "gps.update_period_s = " << c.gps.update_period << "\n\n"
     << "thruster.nominal_force_n = " << c.thruster.nominal_force << "\n"
     << "thruster.force_sigma_n = " << c.thruster.force_sigma << "\n"
     << "thruster.update_period_s = " << c.thruster.update_period << "\n\n"
     << "target.repeat_days = " << c.target.repeat_ratio_num << "\n"
     << "target.repeat_revs = " << c.target.repeat_ratio_den << "\n"
     << "target.longitude_deg = auto\n"
     << "target.greenwich_epoch_deg = " << c.target.greenwich_epoch_longitude / kDegToRad << "\n"
     << "target.x_lim_rad = " << c.target.error_tolerance << "\n\n"
     << "control.eta = " << c.control.forgetting << "\n"
     << "control.warmup_days = " << c.control.warmup_days << "\n"
     << "control.burn_orbits = " << c.control.burn_orbits << "\n"
     << "control.half_period_mode = false\n"
     << "control.f0_deg = " << c.control.f0_target / kDegToRad << "\n"
     << "control.f0_tolerance_deg = " << c.control.f0_tolerance / kDegToRad << "\n"
     << "control.alpha_margin_rad = " << c.control.alpha_margin << "\n"
     << "control.p_min = " << c.control.p_min << "\n"
     << "control.p_max_fraction = " << c.control.p_max_fraction << "\n"
     << "control.rls_p0_curvature = " << c.control.rls_p0[0] << "\n"
     << "control.rls_p0_slope = " << c.control.rls_p0[1] << "\n"
     << "control.rls_p0_offset = " << c.control.rls_p0[2] << "\n"
     << "control.rls_time_scale_s = " << c.control.rls_time_scale << "\n\n"
     << "sim.mode = full\n"
     << "sim.duration_days = " << c.duration_days << "\n"
     << "sim.tick_s = " << c.tick << "\n"
     << "sim.seed = " << c.seed << "\n"
     << "sim.drag_force_target_n = " << c.drag_force_target << "\n";
  return os.str();
}

}  // namespace gtrack

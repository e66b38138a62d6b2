#include "gtrack/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gtrack/controller.hpp"
#include "gtrack/errors.hpp"
#include "gtrack/estimator.hpp"

namespace gtrack {

namespace {

double effective_j2(const EnvironmentConfig& env) {
  return env.zonal_degree >= 2 ? kJ2 : 0.0;
}

ControllerState make_controller(const ScenarioConfig& config, double gain,
                                double burn_duration) {
  ControllerState ctrl;
  ctrl.gain = gain;
  ctrl.burn_duration = burn_duration;
  ctrl.phasing_enabled = config.control.half_period_mode;
  ctrl.f0_target = config.control.f0_target;
  ctrl.f0_tolerance = config.control.f0_tolerance;
  ctrl.x_lim = config.target.error_tolerance;
  ctrl.alpha_margin = config.control.alpha_margin;
  ctrl.p_min = config.control.p_min;
  ctrl.p_max_fraction = config.control.p_max_fraction;
  return ctrl;
}

ScenarioResult run_full(const ScenarioConfig& config) {
  const double mu = kMu;
  const double j2 = effective_j2(config.env);

  // Initial truth state. Mean-variant inputs are mapped to osculating before
  // seeding the propagator, which is what keeps the secular rates on the
  // repeat condition.
  const OrbitalElements init = config.initial.elements();
  OrbitalElements osc0, mean0;
  if (config.initial.variant == ElementVariant::Mean) {
    mean0 = init;
    osc0 = mean_to_osc(init, j2, kEarthRadius, mu);
  } else {
    osc0 = init;
    mean0 = osc_to_mean(init, j2, kEarthRadius, mu);
  }
  const InertialState truth0 = kep_to_cart(osc0, mu, 0.0);

  const double a_star = mean0.semi_major_axis;
  const double n_star = std::sqrt(mu / (a_star * a_star * a_star));
  const double u_max = config.thruster.nominal_force / config.body.mass;

  TrackTarget target = config.target;
  if (config.auto_target_longitude) {
    target.target_longitude =
        wrap_two_pi(target.ratio() * wrap_two_pi(mean0.mean_latitude()) +
                    wrap_two_pi(mean0.raan) - target.greenwich_epoch_longitude);
  }

  const double gain = control_gain(target, u_max, a_star);
  const double burn_duration = config.control.half_period_mode
                                   ? config.control.burn_orbits * kPi / n_star
                                   : config.control.burn_orbits * kTwoPi / n_star;

  // Drag calibration: scale the reference density onto the force target.
  EnvironmentConfig env = config.env;
  double p_reference = 0.0;
  if (env.density_ref > 0.0) {
    double mean_force = mean_tangential_drag_force(osc0, config.body, env, mu);
    if (config.drag_force_target > 0.0 && mean_force > 0.0) {
      env.density_ref *= config.drag_force_target / mean_force;
      mean_force = config.drag_force_target;
    }
    p_reference = 3.0 * target.ratio() * mean_force / (config.body.mass * a_star);
  }

  RngStream gps_rng(config.seed, 1);
  RngStream thruster_rng(config.seed, 2);
  MeasurementPipeline meas_pipe(target, mu, j2, kEarthRadius);
  MeasurementPipeline truth_pipe(target, mu, j2, kEarthRadius);
  Propagator prop(truth0, config.body, env, StepControl{});

  ControllerState ctrl = make_controller(config, gain, burn_duration);
  const double warmup_end = config.control.warmup_days * kSecondsPerDay;
  const double f_hat_scale = config.body.mass * a_star / (3.0 * target.ratio());

  const long n_ticks = std::lround(config.duration_days * kSecondsPerDay / config.tick);
  ScenarioResult result;
  result.records.reserve(n_ticks + 1);
  result.a_star = a_star;
  result.gain = gain;
  result.p_reference = p_reference;

  // Tick 0: prime pipelines and the estimator with the first measurement.
  TrackMeasurement truth_meas = truth_pipe.measure(truth0);
  TrackMeasurement meas = meas_pipe.measure(gps_measure(truth0, config.gps, gps_rng));
  RlsState rls = RlsState::initial(0.0, meas.error, config.control.forgetting,
                                   config.control.rls_p0, config.control.rls_time_scale);

  double applied_accel = 0.0;
  auto log_tick = [&](double t, const TrackMeasurement& tm, const TrackMeasurement& mm,
                      const Estimates& est) {
    LogRecord rec;
    rec.epoch = t;
    rec.x_true = tm.error;
    rec.x_meas = mm.error;
    rec.y_hat = est.y_hat;
    rec.ydot_hat = est.ydot_hat;
    rec.p_hat = est.p_hat;
    rec.command = ctrl.command;
    rec.y_lim = ctrl.y_lim;
    rec.a_osc = tm.osculating.semi_major_axis;
    rec.e_osc = tm.osculating.eccentricity;
    rec.i_osc = tm.osculating.inclination;
    rec.a_mean = tm.mean.semi_major_axis;
    rec.f_drag = prop.drag_accel(t, prop.state()).norm() * config.body.mass;
    rec.f_hat = f_hat_scale * est.p_hat;
    rec.alpha = tm.error - est.y_hat;
    result.records.push_back(rec);
  };
  log_tick(0.0, truth_meas, meas, estimates(rls, 0.0, rls.last_command, gain));

  for (long j = 1; j <= n_ticks; ++j) {
    const double t = j * config.tick;

    // Truth propagation over the elapsed interval with the held command.
    if (applied_accel != 0.0) {
      const double u = applied_accel;
      prop.set_thrust(
          [u](double, const InertialState& s) { return RtnBasis::from_state(s).t_hat * u; });
    } else {
      prop.set_thrust({});
    }
    const InertialState& truth = prop.advance_to(t);

    truth_meas = truth_pipe.measure(truth);
    meas = meas_pipe.measure(gps_measure(truth, config.gps, gps_rng));
    rls = rls_update(rls, t, meas.error);

    if (ctrl.phase == ControlPhase::Inactive && t >= warmup_end) {
      ctrl = activate(ctrl, estimates(rls, t, rls.last_command, gain).p_hat);
    }

    Estimates est = estimates(rls, t, rls.last_command, gain);
    if (ctrl.phase != ControlPhase::Inactive) {
      const int v_prev = ctrl.command;
      ctrl = hysteresis_step(ctrl, est.y_hat, est.ydot_hat, est.p_hat, meas.true_anomaly);
      if (ctrl.command != v_prev) {
        rls = reset_on_switch(rls, t, ctrl.command, gain);
        est = estimates(rls, t, ctrl.command, gain);
      }
    }

    // Thruster draw for the next interval (zero-order hold).
    applied_accel =
        thruster_force(ctrl.command, config.thruster, thruster_rng) / config.body.mass;

    log_tick(t, truth_meas, meas, est);
  }

  result.summary = summarize(result.records, config.tick, u_max);
  return result;
}

ScenarioResult run_double_integrator(const ScenarioConfig& config) {
  const double p_true = config.di.p;
  const double gain = config.di.k;
  if (!(p_true > 0.0 && p_true < gain))
    throw FeasibilityError("double-integrator mode requires 0 < p < k");

  ControllerState ctrl = make_controller(config, gain, 0.0);
  ctrl.phasing_enabled = false;  // no orbit geometry in this mode
  if (config.di.y_lim > 0.0) {
    ctrl.y_lim = config.di.y_lim;
    ctrl.adapt_enabled = false;
  } else {
    // Adapt from p as in the full loop; burn length of one nominal orbit.
    ctrl.burn_duration = kTwoPi / std::sqrt(kMu / std::pow(6838e3, 3));
  }

  RngStream noise_rng(config.seed, 3);
  const double warmup_end = config.control.warmup_days * kSecondsPerDay;
  const long n_ticks = std::lround(config.duration_days * kSecondsPerDay / config.tick);

  ScenarioResult result;
  result.records.reserve(n_ticks + 1);
  result.gain = gain;
  result.p_reference = p_true;

  double y = 0.0, ydot = 0.0;
  double x_meas = config.di.use_estimator ? y + noise_rng.gaussian(config.di.noise_sigma) : y;
  RlsState rls = RlsState::initial(0.0, x_meas, config.control.forgetting,
                                   config.control.rls_p0, config.control.rls_time_scale);

  auto log_tick = [&](double t, const Estimates& est, double xm) {
    LogRecord rec;
    rec.epoch = t;
    rec.x_true = y;
    rec.x_meas = xm;
    rec.y_hat = est.y_hat;
    rec.ydot_hat = est.ydot_hat;
    rec.p_hat = est.p_hat;
    rec.command = ctrl.command;
    rec.y_lim = ctrl.y_lim;
    rec.alpha = y - est.y_hat;
    result.records.push_back(rec);
  };

  Estimates est = config.di.use_estimator
                      ? estimates(rls, 0.0, rls.last_command, gain)
                      : Estimates{y, ydot, p_true};
  log_tick(0.0, est, x_meas);

  for (long j = 1; j <= n_ticks; ++j) {
    const double t = j * config.tick;
    // Exact update of the piecewise-quadratic plant over the tick.
    const double accel = p_true - gain * ctrl.command;
    y += ydot * config.tick + 0.5 * accel * config.tick * config.tick;
    ydot += accel * config.tick;

    if (config.di.use_estimator) {
      x_meas = y + noise_rng.gaussian(config.di.noise_sigma);
      rls = rls_update(rls, t, x_meas);
      est = estimates(rls, t, rls.last_command, gain);
    } else {
      x_meas = y;
      est = Estimates{y, ydot, p_true};
    }

    if (ctrl.phase == ControlPhase::Inactive && t >= warmup_end) {
      ctrl = activate(ctrl, est.p_hat);
    }

    if (ctrl.phase != ControlPhase::Inactive) {
      const int v_prev = ctrl.command;
      ctrl = hysteresis_step(ctrl, est.y_hat, est.ydot_hat, est.p_hat, ctrl.f0_target);
      if (ctrl.command != v_prev && config.di.use_estimator) {
        rls = reset_on_switch(rls, t, ctrl.command, gain);
        est = estimates(rls, t, ctrl.command, gain);
      }
    }

    log_tick(t, est, x_meas);
  }

  result.summary = summarize(result.records, config.tick, 0.0);
  return result;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  ScenarioResult result = config.mode == SimMode::Full ? run_full(config)
                                                       : run_double_integrator(config);
  if (!config.output_path.empty()) write_csv_file(config.output_path, result.records);
  return result;
}

namespace {

struct Burn {
  long start = 0;  // tick index of first v=1 record
  long end = 0;    // tick index of first v=0 record after it (one past)
};

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

MetricsSummary summarize(const std::vector<LogRecord>& records, double tick, double u_max) {
  if (records.empty()) throw std::invalid_argument("summarize: empty log");
  MetricsSummary s;
  const long n = static_cast<long>(records.size());

  // Command transitions and burn extents.
  std::vector<long> transitions;
  std::vector<Burn> burns;
  for (long i = 1; i < n; ++i) {
    if (records[i].command != records[i - 1].command) {
      transitions.push_back(i);
      if (records[i].command == 1) {
        burns.push_back({i, n});
      } else if (!burns.empty()) {
        burns.back().end = i;
      }
    }
  }
  s.switch_count = static_cast<int>(transitions.size());

  double firing_ticks = 0.0;
  for (long i = 0; i < n; ++i) firing_ticks += records[i].command;
  s.total_firing_time = firing_ticks * tick;
  s.delta_v = u_max > 0.0 ? u_max * s.total_firing_time : 0.0;

  // Settling: the limit cycle is taken as established from the second
  // command transition onwards.
  long settle_idx = 0;
  if (transitions.size() >= 2) {
    settle_idx = transitions[1];
    s.settled = true;
    s.settling_time = records[settle_idx].epoch;
  }

  if (s.settled) {
    double max_abs = 0.0;
    long post_ticks = 0, post_firing = 0;
    for (long i = settle_idx; i < n; ++i) {
      max_abs = std::max(max_abs, std::abs(records[i].x_true));
      ++post_ticks;
      post_firing += records[i].command;
    }
    s.max_abs_error_post_settling = max_abs;
    s.duty_cycle = post_ticks > 0 ? static_cast<double>(post_firing) / post_ticks : 0.0;

    std::vector<double> durations;
    std::vector<double> starts;
    for (const Burn& b : burns) {
      if (b.start < settle_idx || b.end >= n) continue;  // skip partial/pre-settling burns
      durations.push_back((b.end - b.start) * tick);
      starts.push_back(records[b.start].epoch);
    }
    s.burn_count = static_cast<int>(durations.size());
    s.mean_burn_duration = mean_of(durations);
    if (starts.size() >= 2) {
      std::vector<double> gaps;
      for (std::size_t i = 1; i < starts.size(); ++i) gaps.push_back(starts[i] - starts[i - 1]);
      s.mean_interburn_interval = mean_of(gaps);
    }

    std::vector<double> p_hats;
    for (long i = settle_idx; i < n; ++i) p_hats.push_back(records[i].p_hat);
    s.p_hat_mean = mean_of(p_hats);
    double var = 0.0;
    for (double p : p_hats) var += (p - s.p_hat_mean) * (p - s.p_hat_mean);
    s.p_hat_std = p_hats.size() > 1 ? std::sqrt(var / (p_hats.size() - 1)) : 0.0;
  }

  // Orbit-averaged eccentricity drift: first window vs last window, window =
  // one orbital period when the log carries a live orbit.
  long window = 1;
  if (records.front().a_osc > 0.0) {
    const double a = records.front().a_osc;
    window = std::max<long>(1, std::lround(kTwoPi * std::sqrt(a * a * a / kMu) / tick));
    window = std::min(window, n);
  }
  double e_head = 0.0, e_tail = 0.0;
  for (long i = 0; i < window; ++i) {
    e_head += records[i].e_osc;
    e_tail += records[n - 1 - i].e_osc;
  }
  s.delta_e = (e_tail - e_head) / static_cast<double>(window);

  // Limit-cycle amplitude/period on the tracking error after settling:
  // hysteresis crossings of the interquartile midline yield one extremum per
  // half cycle without smoothing.
  if (s.settled && n - settle_idx > 4) {
    std::vector<double> xs;
    for (long i = settle_idx; i < n; ++i) xs.push_back(records[i].x_true);
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[sorted.size() / 4];
    const double hi = sorted[(3 * sorted.size()) / 4];
    const double mid = 0.5 * (lo + hi);
    const double band = 0.25 * (hi - lo);

    if (band > 0.0) {
      std::vector<long> max_idx;
      std::vector<double> max_val, min_val;
      int state = 0;  // +1 above band, -1 below
      long seg_start = 0;
      for (long i = 0; i < static_cast<long>(xs.size()); ++i) {
        const int new_state = xs[i] > mid + band ? 1 : (xs[i] < mid - band ? -1 : state);
        if (state != 0 && new_state != 0 && new_state != state) {
          // Crossing: close the previous segment with its extremum.
          const auto begin = xs.begin() + seg_start;
          const auto end = xs.begin() + i;
          if (state > 0) {
            const auto it = std::max_element(begin, end);
            max_idx.push_back(settle_idx + (it - xs.begin()));
            max_val.push_back(*it);
          } else {
            min_val.push_back(*std::min_element(begin, end));
          }
          seg_start = i;
        }
        if (new_state != 0) state = new_state;
      }
      if (max_val.size() >= 2 && !min_val.empty()) {
        s.cycle_available = true;
        s.cycle_amplitude = mean_of(max_val) - mean_of(min_val);
        std::vector<double> periods;
        for (std::size_t i = 1; i < max_idx.size(); ++i)
          periods.push_back((max_idx[i] - max_idx[i - 1]) * tick);
        s.cycle_period = mean_of(periods);
      }
    }
  }

  return s;
}

std::string MetricsSummary::to_text() const {
  std::ostringstream os;
  char buf[64];
  auto put = [&](const char* key, double value) {
    std::snprintf(buf, sizeof buf, "%.10g", value);
    os << key << ": " << buf << "\n";
  };
  os << "settled: " << (settled ? "true" : "false") << "\n";
  put("settling_time_s", settling_time);
  put("max_abs_error_post_settling_rad", max_abs_error_post_settling);
  os << "switch_count: " << switch_count << "\n";
  os << "burn_count: " << burn_count << "\n";
  put("mean_burn_duration_s", mean_burn_duration);
  put("mean_interburn_interval_s", mean_interburn_interval);
  put("duty_cycle", duty_cycle);
  put("total_firing_time_s", total_firing_time);
  put("delta_v_m_s", delta_v);
  put("delta_e", delta_e);
  put("p_hat_mean_rad_s2", p_hat_mean);
  put("p_hat_std_rad_s2", p_hat_std);
  os << "cycle_available: " << (cycle_available ? "true" : "false") << "\n";
  put("cycle_amplitude_rad", cycle_amplitude);
  put("cycle_period_s", cycle_period);
  return os.str();
}

namespace {
constexpr char kCsvHeader[] =
    "epoch_s,x_true_rad,x_meas_rad,y_hat_rad,ydot_hat_rad_s,p_hat_rad_s2,v,y_lim_rad,"
    "a_osc_m,e_osc,i_osc_rad,a_mean_m,f_drag_N,f_hat_N,alpha_rad";
}

void write_csv(std::ostream& out, const std::vector<LogRecord>& records) {
  out << kCsvHeader << "\n";
  char buf[512];
  for (const LogRecord& r : records) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g\n",
                  r.epoch, r.x_true, r.x_meas, r.y_hat, r.ydot_hat, r.p_hat, r.command,
                  r.y_lim, r.a_osc, r.e_osc, r.i_osc, r.a_mean, r.f_drag, r.f_hat, r.alpha);
    out << buf;
  }
}

void write_csv_file(const std::string& path, const std::vector<LogRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv_file: cannot open '" + path + "'");
  write_csv(out, records);
}

std::string csv_string(const std::vector<LogRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::vector<LogRecord> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv_file: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("read_csv_file: '" + path + "' has an unexpected header");

  std::vector<LogRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LogRecord r;
    double v = 0.0;
    if (std::sscanf(line.c_str(),
                    "%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg",
                    &r.epoch, &r.x_true, &r.x_meas, &r.y_hat, &r.ydot_hat, &r.p_hat, &v,
                    &r.y_lim, &r.a_osc, &r.e_osc, &r.i_osc, &r.a_mean, &r.f_drag, &r.f_hat,
                    &r.alpha) != 15)
      throw std::runtime_error("read_csv_file: malformed row in '" + path + "'");
    r.command = static_cast<int>(v);
    records.push_back(r);
  }
  return records;
}

}  // namespace gtrack

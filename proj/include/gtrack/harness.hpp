#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gtrack/config.hpp"

namespace gtrack {

// One row per control tick; mirrors the CSV schema.
struct LogRecord {
  double epoch = 0.0;        // [s]
  double x_true = 0.0;       // [rad]
  double x_meas = 0.0;       // [rad]
  double y_hat = 0.0;        // [rad]
  double ydot_hat = 0.0;     // [rad/s]
  double p_hat = 0.0;        // [rad/s^2]
  int command = 0;           // v
  double y_lim = 0.0;        // [rad]
  double a_osc = 0.0;        // [m]
  double e_osc = 0.0;
  double i_osc = 0.0;        // [rad]
  double a_mean = 0.0;       // [m]
  double f_drag = 0.0;       // [N]
  double f_hat = 0.0;        // [N], m a* p_hat / (3 r)
  double alpha = 0.0;        // [rad], x_true - y_hat residual
};

struct MetricsSummary {
  double settling_time = 0.0;             // second command transition [s]
  bool settled = false;
  double max_abs_error_post_settling = 0.0;  // [rad]
  int switch_count = 0;
  int burn_count = 0;                     // completed burns after settling
  double mean_burn_duration = 0.0;        // [s]
  double mean_interburn_interval = 0.0;   // [s], burn start to burn start
  double duty_cycle = 0.0;                // post settling
  double total_firing_time = 0.0;         // [s], whole run
  double delta_v = 0.0;                   // [m/s], whole run
  double delta_e = 0.0;                   // orbit-averaged e, end minus start
  double p_hat_mean = 0.0;                // [rad/s^2] post settling
  double p_hat_std = 0.0;
  // Peak-detected limit-cycle estimates on the tracking error.
  bool cycle_available = false;
  double cycle_amplitude = 0.0;           // peak-to-peak [rad]
  double cycle_period = 0.0;              // [s]

  std::string to_text() const;            // key: value lines
};

struct ScenarioResult {
  std::vector<LogRecord> records;
  MetricsSummary summary;
  double a_star = 0.0;        // reference semi-major axis used by the run [m]
  double gain = 0.0;          // k [rad/s^2]
  double p_reference = 0.0;   // 3 r mean|F_T| / (m a*) from the calibration [rad/s^2]
};

// Closed-loop scenario: truth propagation, GPS sensing, RLS estimation,
// hysteresis control and thrust actuation on a shared tick.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Post-run metric extraction; works on records loaded from CSV as well.
// u_max (thrust acceleration) is needed for the delta-v bookkeeping; pass 0
// to compute delta-v from the commanded acceleration column instead.
MetricsSummary summarize(const std::vector<LogRecord>& records, double tick,
                         double u_max = 0.0);

// CSV serialization. Header row, fixed column order, 17 significant digits.
void write_csv(std::ostream& out, const std::vector<LogRecord>& records);
void write_csv_file(const std::string& path, const std::vector<LogRecord>& records);
std::string csv_string(const std::vector<LogRecord>& records);
std::vector<LogRecord> read_csv_file(const std::string& path);

}  // namespace gtrack

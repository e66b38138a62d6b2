#pragma once

#include "gtrack/constants.hpp"

namespace gtrack {

// Repeat-groundtrack geometry. The repeat ratio r (days per revolutions in
// the repeat cycle) is kept as an exact integer ratio so the nominal spacing
// and the mod-2pi node crossing logic stay exact over multi-day runs.
struct TrackTarget {
  long repeat_ratio_num = 3;    // days in the repeat cycle
  long repeat_ratio_den = 46;   // revolutions in the repeat cycle
  double target_longitude = 0.0;           // lambda* [rad], east of Greenwich
  double greenwich_epoch_longitude = 0.0;  // lambda_G(0) [rad]
  double earth_rate = kEarthRate;          // omega_earth [rad/s]
  double error_tolerance = 3.136e-4;       // x_lim [rad] (2 km at the equator)

  double ratio() const {
    return static_cast<double>(repeat_ratio_num) / static_cast<double>(repeat_ratio_den);
  }
  double greenwich_longitude(double epoch) const {
    return greenwich_epoch_longitude + earth_rate * epoch;
  }
  void validate() const;  // positive coprime ratio, positive tolerance
};

struct TrackErrorSample {
  double epoch = 0.0;             // [s]
  double error = 0.0;             // x [rad]
  double gamma_unwrapped = 0.0;   // [rad]
  double raan_unwrapped = 0.0;    // [rad]
};

// T_gamma = 2pi / gamma_rate. Throws std::invalid_argument for rate <= 0.
double nodal_period(double gamma_rate);

// T_G = 2pi / (earth_rate - raan_rate). Throws when the relative rate <= 0.
double greenwich_nodal_period(double raan_rate, double earth_rate);

// lambda_S = 2pi T_gamma / T_G; equals 2pi r at the nominal repeat condition.
double groundtrack_spacing(double t_gamma, double t_greenwich);

// x = r*gamma + Omega - lambda_G(epoch) - lambda*, all angles unwrapped.
TrackErrorSample track_error(double gamma_unwrapped, double raan_unwrapped,
                             const TrackTarget& target, double epoch);

// k = 3 r u_max / a*, the error-curvature authority of the thruster.
double control_gain(const TrackTarget& target, double u_max, double a_star);

}  // namespace gtrack

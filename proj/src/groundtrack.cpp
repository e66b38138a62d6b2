#include "gtrack/groundtrack.hpp"

#include <numeric>
#include <stdexcept>

namespace gtrack {

void TrackTarget::validate() const {
  if (repeat_ratio_num <= 0 || repeat_ratio_den <= 0)
    throw std::invalid_argument("TrackTarget: repeat ratio terms must be positive");
  if (std::gcd(repeat_ratio_num, repeat_ratio_den) != 1)
    throw std::invalid_argument("TrackTarget: repeat ratio must be in lowest terms");
  if (!(error_tolerance > 0.0))
    throw std::invalid_argument("TrackTarget: error_tolerance must be positive");
  if (!(earth_rate > 0.0))
    throw std::invalid_argument("TrackTarget: earth_rate must be positive");
}

double nodal_period(double gamma_rate) {
  if (!(gamma_rate > 0.0))
    throw std::invalid_argument("nodal_period: gamma rate must be positive");
  return kTwoPi / gamma_rate;
}

double greenwich_nodal_period(double raan_rate, double earth_rate) {
  const double rel = earth_rate - raan_rate;
  if (!(rel > 0.0))
    throw std::invalid_argument(
        "greenwich_nodal_period: node precesses at or above the Earth rate");
  return kTwoPi / rel;
}

double groundtrack_spacing(double t_gamma, double t_greenwich) {
  if (!(t_gamma > 0.0) || !(t_greenwich > 0.0))
    throw std::invalid_argument("groundtrack_spacing: periods must be positive");
  return kTwoPi * t_gamma / t_greenwich;
}

TrackErrorSample track_error(double gamma_unwrapped, double raan_unwrapped,
                             const TrackTarget& target, double epoch) {
  TrackErrorSample s;
  s.epoch = epoch;
  s.gamma_unwrapped = gamma_unwrapped;
  s.raan_unwrapped = raan_unwrapped;
  s.error = (static_cast<double>(target.repeat_ratio_num) * gamma_unwrapped) /
                static_cast<double>(target.repeat_ratio_den) +
            raan_unwrapped - target.greenwich_longitude(epoch) - target.target_longitude;
  return s;
}

double control_gain(const TrackTarget& target, double u_max, double a_star) {
  if (!(u_max >= 0.0)) throw std::invalid_argument("control_gain: u_max must be >= 0");
  if (!(a_star > 0.0)) throw std::invalid_argument("control_gain: a_star must be > 0");
  return 3.0 * target.ratio() * u_max / a_star;
}

}  // namespace gtrack

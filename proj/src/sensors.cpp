#include "gtrack/sensors.hpp"

#include <cmath>
#include <stdexcept>

namespace gtrack {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{seed, stream, std::uint64_t{0x9e3779b97f4a7c15}};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // (0, 1), never exactly 0 so the log below is safe.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return mag * std::cos(kTwoPi * u2);
}

void GpsModel::validate() const {
  if (position_sigma < 0.0 || velocity_sigma < 0.0)
    throw std::invalid_argument("GpsModel: sigmas must be >= 0");
  if (!(update_period > 0.0))
    throw std::invalid_argument("GpsModel: update_period must be positive");
}

void ThrusterModel::validate() const {
  if (!(nominal_force > 0.0))
    throw std::invalid_argument("ThrusterModel: nominal_force must be positive");
  if (force_sigma < 0.0)
    throw std::invalid_argument("ThrusterModel: force_sigma must be >= 0");
  if (!(update_period > 0.0))
    throw std::invalid_argument("ThrusterModel: update_period must be positive");
}

InertialState gps_measure(const InertialState& truth, const GpsModel& model, RngStream& rng) {
  InertialState out = truth;
  out.position.x += rng.gaussian(model.position_sigma);
  out.position.y += rng.gaussian(model.position_sigma);
  out.position.z += rng.gaussian(model.position_sigma);
  out.velocity.x += rng.gaussian(model.velocity_sigma);
  out.velocity.y += rng.gaussian(model.velocity_sigma);
  out.velocity.z += rng.gaussian(model.velocity_sigma);
  return out;
}

double thruster_force(int command, const ThrusterModel& model, RngStream& rng) {
  if (command == 0) return 0.0;
  return model.nominal_force + rng.gaussian(model.force_sigma);
}

MeasurementPipeline::MeasurementPipeline(const TrackTarget& target, double mu, double j2,
                                         double earth_radius)
    : target_(target), mu_(mu), j2_(j2), earth_radius_(earth_radius) {
  target_.validate();
}

TrackMeasurement MeasurementPipeline::measure(const InertialState& state) {
  TrackMeasurement out;
  out.osculating = cart_to_kep(state, mu_);
  out.mean = osc_to_mean(out.osculating, j2_, earth_radius_, mu_);
  out.true_anomaly = out.osculating.true_anomaly();

  const double gamma = wrap_two_pi(out.mean.mean_latitude());
  const double raan = out.mean.raan;
  if (!primed_) {
    gamma_ = AngleTracker::start(gamma);
    raan_ = AngleTracker::start(raan);
    primed_ = true;
  } else {
    gamma_ = unwrap(gamma_, gamma);
    raan_ = unwrap(raan_, raan);
  }
  out.gamma_unwrapped = gamma_.accumulated;
  out.raan_unwrapped = raan_.accumulated;
  out.error = track_error(out.gamma_unwrapped, out.raan_unwrapped, target_, state.epoch).error;
  return out;
}

}  // namespace gtrack

#pragma once

#include <cstdint>
#include <random>

#include "gtrack/elements.hpp"
#include "gtrack/groundtrack.hpp"

namespace gtrack {

// Deterministic Gaussian stream: mt19937_64 plus an explicit Box-Muller
// transform, so a (seed, stream) pair reproduces bit-identically everywhere.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);
  double gaussian();                                // N(0, 1)
  double gaussian(double sigma) { return sigma * gaussian(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
  double uniform();  // (0, 1)
};

struct GpsModel {
  double position_sigma = 20.0;   // [m] per axis
  double velocity_sigma = 0.1;    // [m/s] per axis
  double update_period = 30.0;    // [s]
  void validate() const;
};

struct ThrusterModel {
  double nominal_force = 0.01;    // F_max [N]
  double force_sigma = 5e-4;      // [N]
  double update_period = 30.0;    // [s], zero-order hold between draws
  void validate() const;
};

// Adds independent zero-mean Gaussian noise per axis; epoch preserved.
InertialState gps_measure(const InertialState& truth, const GpsModel& model, RngStream& rng);

// command = 0 -> exactly zero; command = 1 -> one draw of F_max + noise,
// to be held for the update period by the caller.
double thruster_force(int command, const ThrusterModel& model, RngStream& rng);

struct TrackMeasurement {
  double error = 0.0;          // x tilde [rad]
  double true_anomaly = 0.0;   // osculating f tilde [rad] (for burn phasing)
  double gamma_unwrapped = 0.0;
  double raan_unwrapped = 0.0;
  OrbitalElements osculating;
  OrbitalElements mean;
};

// GPS-to-error pipeline: cart_to_kep -> osc_to_mean -> unwrap(gamma, Omega)
// -> track_error. Owns the angle trackers, which prime on the first sample.
class MeasurementPipeline {
 public:
  MeasurementPipeline(const TrackTarget& target, double mu, double j2, double earth_radius);
  TrackMeasurement measure(const InertialState& state);

 private:
  TrackTarget target_;
  double mu_, j2_, earth_radius_;
  AngleTracker gamma_, raan_;
  bool primed_ = false;
};

}  // namespace gtrack

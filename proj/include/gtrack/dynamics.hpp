#pragma once

#include <functional>
#include <vector>

#include "gtrack/constants.hpp"
#include "gtrack/elements.hpp"
#include "gtrack/integrator.hpp"
#include "gtrack/vec3.hpp"

namespace gtrack {

struct SpacecraftBody {
  double mass = 200.0;               // [kg]
  double drag_area = 1.0;            // [m^2]
  double drag_coeff = 2.2;           // C_d
  double srp_area = 1.0;             // [m^2]
  double reflectivity_coeff = 1.3;   // C_r
  void validate() const;
};

// Environmental force models of the truth propagation. The atmosphere is an
// exponential profile with an optional diurnal-bulge cosine modulation; the
// gravity field keeps zonal terms up to the configured degree.
struct EnvironmentConfig {
  int zonal_degree = 6;              // 0 = point mass, 2..6 = zonal J terms
  double density_ref = 2.3e-12;      // rho_0 [kg/m^3] at ref_altitude
  double ref_altitude = 460e3;       // [m]
  double scale_height = 62e3;        // [m]
  double diurnal_amplitude = 0.3;    // in [0, 1)
  double diurnal_lag = 30.0 * kDegToRad;  // bulge east of the subsolar point
  bool sun_enabled = true;
  bool moon_enabled = true;
  bool srp_enabled = true;
  double srp_pressure = kSrpPressure1Au;  // [N/m^2] at 1 AU
  double epoch_jd = kJd2000;         // absolute date of scenario t = 0
  void validate() const;
};

struct RtnAcceleration {
  double radial = 0.0;
  double tangential = 0.0;
  double normal = 0.0;
};

// Radial / tangential / normal orthonormal triad of an orbit state.
struct RtnBasis {
  Vec3 r_hat, t_hat, n_hat;
  static RtnBasis from_state(const InertialState& state);
  RtnAcceleration to_rtn(const Vec3& v) const;
  Vec3 from_rtn(const RtnAcceleration& a) const;
};

RtnAcceleration eci_to_rtn(const InertialState& state, const Vec3& vector);

// Central gravity plus zonal harmonics up to `degree` (0 or 1 gives the pure
// point-mass term).
Vec3 accel_zonal_gravity(const Vec3& position, int degree, double mu, double earth_radius);

// Exponential-atmosphere drag with diurnal modulation, relative to the
// co-rotating air. sun_direction is the unit vector to the Sun.
Vec3 accel_drag(const InertialState& state, const SpacecraftBody& body,
                const EnvironmentConfig& env, const Vec3& sun_direction);
double atmosphere_density(const Vec3& position, const EnvironmentConfig& env,
                          const Vec3& sun_direction);

// Differential point-mass attraction of a third body at body_position.
Vec3 accel_third_body(const Vec3& position, const Vec3& body_position, double mu_body);

// Cannonball solar radiation pressure with a cylindrical shadow.
Vec3 accel_srp(const Vec3& position, const SpacecraftBody& body,
               const EnvironmentConfig& env, const Vec3& sun_position);
bool in_earth_shadow(const Vec3& position, const Vec3& sun_direction);

// Thrust acceleration callback; must be side-effect free (the integrator may
// re-evaluate the same epoch during dense output).
using ThrustAccel = std::function<Vec3(double t, const InertialState& state)>;

// Cowell propagator: integrates r'' = gravity + drag + third-body + SRP +
// thrust with the adaptive RK5(4) pair.
class Propagator {
 public:
  Propagator(const InertialState& initial, const SpacecraftBody& body,
             const EnvironmentConfig& env, const StepControl& control = {});

  void set_thrust(ThrustAccel thrust);  // empty = coasting
  const InertialState& advance_to(double t);
  InertialState sample(double t) const;  // dense output within the last step
  const InertialState& state() const { return state_; }

  Vec3 total_accel(double t, const InertialState& s) const;
  Vec3 drag_accel(double t, const InertialState& s) const;

 private:
  SpacecraftBody body_;
  EnvironmentConfig env_;
  ThrustAccel thrust_;
  Dopri5 stepper_;
  InertialState state_;
};

// One-shot trajectory: propagates from `initial` and returns the states at
// the requested sample epochs (all inside [initial.epoch, t_end]).
std::vector<InertialState> propagate(const InertialState& initial, double t_end,
                                     const SpacecraftBody& body, const EnvironmentConfig& env,
                                     const ThrustAccel& thrust,
                                     const std::vector<double>& sample_times,
                                     const StepControl& control = {});

// Time-averaged |tangential drag force| over one Kepler orbit of the given
// osculating elements; used to calibrate density_ref against a force target.
double mean_tangential_drag_force(const OrbitalElements& osculating,
                                  const SpacecraftBody& body, const EnvironmentConfig& env,
                                  double mu);

}  // namespace gtrack

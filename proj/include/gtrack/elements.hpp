#pragma once

#include "gtrack/constants.hpp"
#include "gtrack/vec3.hpp"

namespace gtrack {

enum class AnomalyKind { Mean, True, Eccentric };
enum class ElementVariant { Osculating, Mean };

// Classical Keplerian element set. Angles in radians, lengths in meters.
//
// Near-circular and near-equatorial states use the node-relative convention:
// for e < 1e-8 the argument of periapsis is set to zero and its phase is
// folded into the anomaly (which then equals the argument of latitude); for
// i < 1e-8 the RAAN is set to zero likewise. The error signal downstream only
// consumes the sums gamma = M + omega and Omega, which stay well defined.
struct OrbitalElements {
  double semi_major_axis = 0.0;  // a [m]
  double eccentricity = 0.0;     // e
  double inclination = 0.0;      // i [rad]
  double raan = 0.0;             // Omega [rad]
  double arg_periapsis = 0.0;    // omega [rad]
  double anomaly = 0.0;          // [rad], meaning set by anomaly_kind
  AnomalyKind anomaly_kind = AnomalyKind::True;
  ElementVariant variant = ElementVariant::Osculating;

  double mean_anomaly() const;
  double true_anomaly() const;
  double eccentric_anomaly() const;

  // Mean latitude gamma = M + omega, the fast angle of the error signal.
  double mean_latitude() const { return mean_anomaly() + arg_periapsis; }

  // Throws std::invalid_argument when the basic invariants are violated.
  void validate() const;
};

// Earth-centered inertial state. Epoch is seconds past scenario start.
struct InertialState {
  Vec3 position;   // [m]
  Vec3 velocity;   // [m/s]
  double epoch = 0.0;  // [s]
};

// Continuous-angle bookkeeping: accumulates an unbounded angle from wrapped
// samples. The residue invariant accumulated == last_wrapped (mod 2pi) holds
// after every update.
struct AngleTracker {
  double last_wrapped = 0.0;
  double accumulated = 0.0;

  static AngleTracker start(double wrapped_angle);
};

// Advances the tracker by the shortest signed angular distance. Throws
// std::invalid_argument when the step is ambiguous (magnitude ~pi), which
// signals under-sampling of the angle.
AngleTracker unwrap(const AngleTracker& tracker, double new_wrapped);

double wrap_two_pi(double angle);  // -> [0, 2pi)
double wrap_pi(double angle);      // -> [-pi, pi)

// Kepler equation M = E - e sin(E), Newton iteration (tol 1e-12 rad).
double solve_kepler(double mean_anomaly, double eccentricity);
double mean_to_true_anomaly(double mean_anomaly, double eccentricity);
double true_to_mean_anomaly(double true_anomaly, double eccentricity);
double true_to_eccentric_anomaly(double true_anomaly, double eccentricity);
double eccentric_to_true_anomaly(double eccentric_anomaly, double eccentricity);

// Cartesian -> osculating Keplerian. Throws std::domain_error for
// non-elliptical or degenerate (|h| ~ 0) states.
OrbitalElements cart_to_kep(const InertialState& state, double mu);

// Keplerian -> Cartesian at the given epoch.
InertialState kep_to_cart(const OrbitalElements& elements, double mu, double epoch = 0.0);

// First-order J2 short-period filtering between osculating and mean elements.
// Valid in the near-circular regime; throws std::domain_error for e >= 0.1.
// j2 = 0 is the exact identity. The in-plane phase correction is applied to
// the mean latitude (folded into the mean anomaly); the periapsis split is
// left at its input value.
OrbitalElements osc_to_mean(const OrbitalElements& osculating, double j2,
                            double earth_radius, double mu);
OrbitalElements mean_to_osc(const OrbitalElements& mean, double j2,
                            double earth_radius, double mu);

}  // namespace gtrack

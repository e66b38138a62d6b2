#pragma once

#include "gtrack/constants.hpp"

namespace gtrack {

enum class ControlPhase { Inactive, Coasting, AwaitingPhase, Firing };

// On/off hysteresis controller over the averaged double integrator
// y'' = p - k v. The engine is commanded on when the switching function
// reaches +y_lim and off at -y_lim; between thresholds the most recent
// crossing wins. Burn starts can optionally be postponed until the true
// anomaly reaches f0 (half-period burn shaping).
struct ControllerState {
  int command = 0;            // v
  int hysteresis_memory = 0;  // v_h
  ControlPhase phase = ControlPhase::Inactive;

  double gain = 0.0;   // k [rad/s^2]
  double y_lim = 0.0;  // dead-band half width [rad]
  bool adapt_enabled = true;  // recompute y_lim at coast-to-fire decisions

  // Burn shaping
  double burn_duration = 0.0;  // T(m) [s], target firing time per cycle
  bool phasing_enabled = false;
  double f0_target = 0.0;                     // [rad]
  double f0_tolerance = 0.5 * kDegToRad;      // [rad]

  // Dead-band feasibility bound: y_lim <= x_lim - alpha_margin.
  double x_lim = 3.136e-4;       // [rad]
  double alpha_margin = 1e-4;    // budget for the periodic residual [rad]

  // Disturbance-estimate clamp applied before evaluating the law.
  double p_min = 1e-16;          // [rad/s^2]
  double p_max_fraction = 0.9;   // of gain
  bool last_p_clamped = false;
};

struct LimitCycleMetrics {
  double period = 0.0;        // T_L [s]
  double firing_time = 0.0;   // T_F [s]
  double coasting_time = 0.0; // T_C [s]
  double duty_cycle = 0.0;    // D = T_F / T_L
};

// s(y, ydot; p) = y - ydot^2 / (2(p-k)) for ydot >= 0, y - ydot^2 / (2p)
// otherwise. Throws FeasibilityError unless 0 < p < k.
double switching_function(double y, double y_dot, double p, double k);

// Dead-band from equating the limit-cycle firing time to the target burn
// duration: y_lim = k (k - p) / (16 p) T^2. Throws FeasibilityError when the
// result violates 0 < y_lim <= x_lim - alpha_margin.
double adapt_y_lim(double p_hat, double k, double burn_duration, double x_lim,
                   double alpha_margin);

// Closed-form steady-state cycle: T_L = 4 sqrt(k y_lim / (p k - p^2)),
// D = p/k.
LimitCycleMetrics limit_cycle_metrics(double p, double k, double y_lim);

// Eccentricity change of a constant tangential burn of length T started at
// true anomaly f0: de = 2 a*^2 u_max / mu [sin(n T + f0) - sin(f0)].
double delta_e_per_burn(double u_max, double a_star, double mu, double f0,
                        double burn_duration);

// One controller tick. Inputs are the estimator outputs and the current
// osculating true anomaly (used only while awaiting the burn phase).
// Transitions Coasting -> (AwaitingPhase ->) Firing -> Coasting; y_lim is
// re-adapted from the clamped p at each coast-to-fire decision.
ControllerState hysteresis_step(const ControllerState& state, double y, double y_dot,
                                double p_hat, double true_anomaly);

// Warm-up exit: adapts the dead-band from the current estimate and starts
// coasting.
ControllerState activate(const ControllerState& state, double p_hat);

}  // namespace gtrack

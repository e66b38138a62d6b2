#include "gtrack/controller.hpp"

#include <algorithm>
#include <cmath>

#include "gtrack/elements.hpp"
#include "gtrack/errors.hpp"

namespace gtrack {

namespace {

double clamp_p(const ControllerState& state, double p_hat, bool* clamped) {
  const double hi = state.p_max_fraction * state.gain;
  const double p = std::clamp(p_hat, state.p_min, hi);
  *clamped = p != p_hat;
  return p;
}

}  // namespace

double switching_function(double y, double y_dot, double p, double k) {
  if (!(p > 0.0) || !(p < k))
    throw FeasibilityError("switching_function: requires 0 < p < k");
  if (y_dot >= 0.0) return y - y_dot * y_dot / (2.0 * (p - k));
  return y - y_dot * y_dot / (2.0 * p);
}

double adapt_y_lim(double p_hat, double k, double burn_duration, double x_lim,
                   double alpha_margin) {
  if (!(p_hat > 0.0) || !(p_hat < k))
    throw FeasibilityError("adapt_y_lim: requires 0 < p < k");
  if (!(burn_duration > 0.0))
    throw FeasibilityError("adapt_y_lim: burn duration must be positive");
  const double y_lim = k * (k - p_hat) / (16.0 * p_hat) * burn_duration * burn_duration;
  const double bound = x_lim - alpha_margin;
  if (!(y_lim > 0.0) || y_lim > bound)
    throw FeasibilityError(
        "adapt_y_lim: dead-band outside (0, x_lim - alpha_margin], reduce the burn length");
  return y_lim;
}

LimitCycleMetrics limit_cycle_metrics(double p, double k, double y_lim) {
  if (!(p > 0.0) || !(p < k))
    throw FeasibilityError("limit_cycle_metrics: requires 0 < p < k");
  if (!(y_lim > 0.0))
    throw FeasibilityError("limit_cycle_metrics: y_lim must be positive");
  LimitCycleMetrics m;
  m.period = 4.0 * std::sqrt(k * y_lim / (p * k - p * p));
  m.duty_cycle = p / k;
  m.firing_time = m.duty_cycle * m.period;
  m.coasting_time = m.period - m.firing_time;
  return m;
}

double delta_e_per_burn(double u_max, double a_star, double mu, double f0,
                        double burn_duration) {
  if (burn_duration < 0.0)
    throw std::invalid_argument("delta_e_per_burn: burn duration must be >= 0");
  const double n_star = std::sqrt(mu / (a_star * a_star * a_star));
  const double half_arc = 0.5 * n_star * burn_duration;
  // sin(nT + f0) - sin(f0) in product form, exact zero for full-period burns.
  const double sine_term = 2.0 * std::cos(f0 + half_arc) * std::sin(half_arc);
  return 2.0 * a_star * a_star * u_max / mu * sine_term;
}

ControllerState activate(const ControllerState& state, double p_hat) {
  ControllerState out = state;
  if (state.adapt_enabled) {
    const double p = clamp_p(state, p_hat, &out.last_p_clamped);
    out.y_lim = adapt_y_lim(p, state.gain, state.burn_duration, state.x_lim,
                            state.alpha_margin);
  } else if (!(state.y_lim > 0.0)) {
    throw FeasibilityError("activate: fixed y_lim must be positive");
  }
  out.phase = ControlPhase::Coasting;
  out.command = 0;
  out.hysteresis_memory = 0;
  return out;
}

ControllerState hysteresis_step(const ControllerState& state, double y, double y_dot,
                                double p_hat, double true_anomaly) {
  ControllerState out = state;
  if (state.phase == ControlPhase::Inactive) return out;

  const double p = clamp_p(state, p_hat, &out.last_p_clamped);
  const double s = switching_function(y, y_dot, p, state.gain);

  switch (state.phase) {
    case ControlPhase::Coasting:
      if (s >= state.y_lim) {
        // Coast-to-fire decision: re-adapt the dead-band from the current
        // estimate before committing to the burn.
        if (state.adapt_enabled)
          out.y_lim = adapt_y_lim(p, state.gain, state.burn_duration, state.x_lim,
                                  state.alpha_margin);
        out.hysteresis_memory = 1;
        if (state.phasing_enabled) {
          out.phase = ControlPhase::AwaitingPhase;
          out.command = 0;
        } else {
          out.phase = ControlPhase::Firing;
          out.command = 1;
        }
      }
      break;

    case ControlPhase::AwaitingPhase:
      if (s <= -state.y_lim) {  // fire request lapsed while waiting
        out.phase = ControlPhase::Coasting;
        out.hysteresis_memory = 0;
        out.command = 0;
      } else if (std::abs(wrap_pi(true_anomaly - state.f0_target)) < state.f0_tolerance) {
        out.phase = ControlPhase::Firing;
        out.command = 1;
      }
      break;

    case ControlPhase::Firing:
      if (s <= -state.y_lim) {
        out.phase = ControlPhase::Coasting;
        out.hysteresis_memory = 0;
        out.command = 0;
      }
      break;

    case ControlPhase::Inactive:
      break;
  }
  return out;
}

}  // namespace gtrack

#pragma once

#include <array>
#include <functional>

namespace gtrack {

// Step-size control for the embedded Runge-Kutta 5(4) pair. Position and
// velocity components carry separate absolute tolerances.
struct StepControl {
  double abs_tol_pos = 1e-9;   // [m]
  double abs_tol_vel = 1e-12;  // [m/s]
  double rel_tol = 1e-12;
  double h_initial = 10.0;     // [s]
  double h_min = 1e-6;         // [s]
  double h_max = 900.0;        // [s]
};

// Dormand-Prince 5(4) integrator over a fixed 6-dimensional state
// (position, velocity), with the classical 4th-order dense-output
// interpolant. Steps are accepted/rejected by a PI controller on the scaled
// RMS error norm.
class Dopri5 {
 public:
  using State = std::array<double, 6>;
  using Rhs = std::function<void(double t, const State& y, State& dydt)>;

  Dopri5(Rhs rhs, double t0, const State& y0, const StepControl& control = {});

  // Advances by one adaptive step (at most h_limit). Throws PropagationError
  // on step-size underflow.
  void step(double h_limit);

  // Integrates until t_end exactly (last step shortened to hit it).
  void advance_to(double t_end);

  // Dense evaluation inside the last accepted step [t_prev, t].
  State interpolate(double t_interp) const;

  double time() const { return t_; }
  double previous_time() const { return t_prev_; }
  const State& state() const { return y_; }
  double suggested_step() const { return h_; }
  void set_suggested_step(double h) { h_ = h; }

 private:
  Rhs rhs_;
  StepControl control_;
  double t_, t_prev_;
  State y_, y_prev_;
  State k1_;  // FSAL derivative at t_
  double h_;
  double err_prev_ = 1.0;
  std::array<State, 5> dense_;  // contd5 coefficients of the last step
  bool have_dense_ = false;

  double error_norm(const State& err, const State& y_new) const;
};

}  // namespace gtrack

#pragma once

#include <array>

namespace gtrack {

// Symmetric 3x3 matrix, row-major, for the RLS covariance.
struct Sym3 {
  std::array<std::array<double, 3>, 3> m{};

  static Sym3 diagonal(const std::array<double, 3>& d);
  double quadratic_form(const std::array<double, 3>& v) const;  // v' M v
  std::array<double, 3> mul(const std::array<double, 3>& v) const;
  void symmetrize();
  double min_eigenvalue() const;  // closed form for symmetric 3x3
};

// Recursive least squares over the quadratic model y(t) = th1 tau^2 + th2 tau
// + th3, tau = t - t_bar (seconds since the most recent input switch).
//
// Internally tau is expressed in units of `time_scale` (default 1e4 s) so the
// regressor spans a few decades instead of twelve and the covariance stays
// well conditioned; theta is rescaled transparently at the interface.
struct RlsState {
  std::array<double, 3> theta_scaled{};  // internal units
  Sym3 covariance;                       // internal units
  double forgetting = 0.9999;            // eta in (0, 1]
  double reference_time = 0.0;           // t_bar [s]
  int last_command = 0;                  // v at t_bar
  double last_measurement_time = 0.0;    // t_j [s]
  double time_scale = 1e4;               // [s]
  std::array<double, 3> p0_diag{1e2, 1e1, 1e-4};  // reset covariance (internal units)

  // Parameters in physical units [rad/s^2, rad/s, rad].
  std::array<double, 3> theta() const;

  // Prior [0, 0, x0]: the first measurement pins the offset term.
  static RlsState initial(double t0, double x0, double eta,
                          const std::array<double, 3>& p0_diag_scaled,
                          double time_scale = 1e4);
};

struct Estimates {
  double y_hat = 0.0;     // [rad]
  double ydot_hat = 0.0;  // [rad/s]
  double p_hat = 0.0;     // [rad/s^2]
};

// Gain/covariance recursion with forgetting; covariance is re-symmetrized and
// checked positive definite after the update. Throws std::invalid_argument if
// t precedes the last measurement.
RlsState rls_update(const RlsState& state, double t, double x_measured);

// Parameter reset at an input switch: re-centers the quadratic at t_bar so
// the interpolated y and ydot are continuous across the reset, removes the
// commanded curvature step from th1, and re-initializes the covariance.
// Throws std::invalid_argument when v_new equals the current command.
RlsState reset_on_switch(const RlsState& state, double t_bar, int v_new, double k);

// Interpolated estimates at t >= reference_time; p_hat folds the currently
// applied command back in: p_hat = 2 th1 + k v.
Estimates estimates(const RlsState& state, double t, int v_current, double k);

}  // namespace gtrack

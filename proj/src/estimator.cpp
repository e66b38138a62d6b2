#include "gtrack/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace gtrack {

Sym3 Sym3::diagonal(const std::array<double, 3>& d) {
  Sym3 out;
  for (int i = 0; i < 3; ++i) out.m[i][i] = d[i];
  return out;
}

double Sym3::quadratic_form(const std::array<double, 3>& v) const {
  const std::array<double, 3> mv = mul(v);
  return v[0] * mv[0] + v[1] * mv[1] + v[2] * mv[2];
}

std::array<double, 3> Sym3::mul(const std::array<double, 3>& v) const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

void Sym3::symmetrize() {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (m[i][j] + m[j][i]);
      m[i][j] = avg;
      m[j][i] = avg;
    }
}

double Sym3::min_eigenvalue() const {
  // Trigonometric closed form for a symmetric 3x3 (Smith's algorithm).
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double tr = m[0][0] + m[1][1] + m[2][2];
  if (p1 == 0.0) return std::min({m[0][0], m[1][1], m[2][2]});

  const double q = tr / 3.0;
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);

  // B = (A - q I) / p; det(B)/2 in [-1, 1] up to rounding.
  auto b = [&](int i, int j) { return (m[i][j] - (i == j ? q : 0.0)) / p; };
  const double detb =
      b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  double r = detb / 2.0;
  if (r < -1.0) r = -1.0;
  if (r > 1.0) r = 1.0;

  const double phi = std::acos(r) / 3.0;
  // Smallest eigenvalue uses phi + 2pi/3.
  return q + 2.0 * p * std::cos(phi + 2.0 * 3.14159265358979323846 / 3.0);
}

std::array<double, 3> RlsState::theta() const {
  const double s = time_scale;
  return {theta_scaled[0] / (s * s), theta_scaled[1] / s, theta_scaled[2]};
}

RlsState RlsState::initial(double t0, double x0, double eta,
                           const std::array<double, 3>& p0_diag_scaled, double time_scale) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("RlsState: forgetting factor must be in (0, 1]");
  RlsState st;
  st.theta_scaled = {0.0, 0.0, x0};
  st.p0_diag = p0_diag_scaled;
  st.covariance = Sym3::diagonal(p0_diag_scaled);
  st.forgetting = eta;
  st.reference_time = t0;
  st.last_measurement_time = t0;
  st.time_scale = time_scale;
  return st;
}

RlsState rls_update(const RlsState& state, double t, double x_measured) {
  if (t < state.last_measurement_time)
    throw std::invalid_argument("rls_update: measurement time precedes the last update");

  const double tau = (t - state.reference_time) / state.time_scale;
  const std::array<double, 3> phi{tau * tau, tau, 1.0};

  RlsState out = state;
  const std::array<double, 3> p_phi = state.covariance.mul(phi);
  const double denom = state.forgetting + state.covariance.quadratic_form(phi);
  const double innovation =
      x_measured - (phi[0] * state.theta_scaled[0] + phi[1] * state.theta_scaled[1] +
                    phi[2] * state.theta_scaled[2]);

  for (int i = 0; i < 3; ++i)
    out.theta_scaled[i] = state.theta_scaled[i] + p_phi[i] / denom * innovation;

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.covariance.m[i][j] =
          (state.covariance.m[i][j] - p_phi[i] * p_phi[j] / denom) / state.forgetting;
  out.covariance.symmetrize();

  if (!(out.covariance.min_eigenvalue() > 0.0))
    throw std::runtime_error("rls_update: covariance lost positive definiteness");

  out.last_measurement_time = t;
  return out;
}

RlsState reset_on_switch(const RlsState& state, double t_bar, int v_new, double k) {
  if (v_new == state.last_command)
    throw std::invalid_argument("reset_on_switch: command did not change");

  const std::array<double, 3> th = state.theta();  // physical units
  const double tau = t_bar - state.reference_time;

  const double th3 = th[0] * tau * tau + th[1] * tau + th[2];
  const double th2 = 2.0 * th[0] * tau + th[1];
  const double th1 = th[0] + k * (state.last_command - v_new) / 2.0;

  RlsState out = state;
  const double s = state.time_scale;
  out.theta_scaled = {th1 * s * s, th2 * s, th3};
  out.covariance = Sym3::diagonal(state.p0_diag);
  out.reference_time = t_bar;
  out.last_command = v_new;
  return out;
}

Estimates estimates(const RlsState& state, double t, int v_current, double k) {
  if (t < state.reference_time)
    throw std::invalid_argument("estimates: query time precedes the reference time");
  const std::array<double, 3> th = state.theta();
  const double tau = t - state.reference_time;
  Estimates e;
  e.y_hat = th[0] * tau * tau + th[1] * tau + th[2];
  e.ydot_hat = 2.0 * th[0] * tau + th[1];
  e.p_hat = 2.0 * th[0] + k * v_current;
  return e;
}

}  // namespace gtrack

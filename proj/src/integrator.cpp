#include "gtrack/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "gtrack/errors.hpp"

namespace gtrack {

namespace {

// Dormand-Prince RK5(4)7M tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// b_i - bhat_i, for the embedded 4th-order error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer's contd5).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

// PI controller constants for order 5 (Hairer DOPRI5 defaults).
constexpr double kBeta = 0.04;
constexpr double kAlpha = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 6.0;

using State = Dopri5::State;

State axpy(const State& y, const State& k, double h) {
  State out;
  for (int i = 0; i < 6; ++i) out[i] = y[i] + h * k[i];
  return out;
}

}  // namespace

Dopri5::Dopri5(Rhs rhs, double t0, const State& y0, const StepControl& control)
    : rhs_(std::move(rhs)), control_(control), t_(t0), t_prev_(t0), y_(y0), y_prev_(y0),
      h_(control.h_initial) {
  rhs_(t_, y_, k1_);
}

double Dopri5::error_norm(const State& err, const State& y_new) const {
  double sum = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double atol = i < 3 ? control_.abs_tol_pos : control_.abs_tol_vel;
    const double sc = atol + control_.rel_tol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
    const double q = err[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / 6.0);
}

void Dopri5::step(double h_limit) {
  double h = std::min({h_, h_limit, control_.h_max});
  for (;;) {
    if (h < control_.h_min)
      throw PropagationError("Dopri5: step size underflow, dynamics too stiff for tolerances");

    State k2, k3, k4, k5, k6, k7, y_tmp, y_new;

    y_tmp = axpy(y_, k1_, h * a21);
    rhs_(t_ + c2 * h, y_tmp, k2);
    for (int i = 0; i < 6; ++i) y_tmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
    rhs_(t_ + c3 * h, y_tmp, k3);
    for (int i = 0; i < 6; ++i)
      y_tmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
    rhs_(t_ + c4 * h, y_tmp, k4);
    for (int i = 0; i < 6; ++i)
      y_tmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(t_ + c5 * h, y_tmp, k5);
    for (int i = 0; i < 6; ++i)
      y_tmp[i] =
          y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(t_ + h, y_tmp, k6);
    for (int i = 0; i < 6; ++i)
      y_new[i] =
          y_[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs_(t_ + h, y_new, k7);  // FSAL

    State err;
    for (int i = 0; i < 6; ++i)
      err[i] = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                    e7 * k7[i]);
    const double norm = error_norm(err, y_new);

    if (norm <= 1.0) {
      // Dense-output coefficients for this step.
      State ydiff, bspl;
      for (int i = 0; i < 6; ++i) {
        ydiff[i] = y_new[i] - y_[i];
        bspl[i] = h * k1_[i] - ydiff[i];
        dense_[0][i] = y_[i];
        dense_[1][i] = ydiff[i];
        dense_[2][i] = bspl[i];
        dense_[3][i] = ydiff[i] - h * k7[i] - bspl[i];
        dense_[4][i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                            d6 * k6[i] + d7 * k7[i]);
      }
      have_dense_ = true;

      t_prev_ = t_;
      y_prev_ = y_;
      t_ += h;
      y_ = y_new;
      k1_ = k7;

      const double fac = kSafety * std::pow(norm > 0 ? norm : 1e-16, -kAlpha) *
                         std::pow(err_prev_, kBeta);
      h_ = h * std::clamp(fac, kFacMin, kFacMax);
      err_prev_ = std::max(norm, 1e-4);
      return;
    }
    h *= std::clamp(kSafety * std::pow(norm, -0.2), kFacMin, 1.0);
  }
}

void Dopri5::advance_to(double t_end) {
  while (t_ < t_end - 1e-12) {
    step(t_end - t_);
  }
}

Dopri5::State Dopri5::interpolate(double t_interp) const {
  const double h = t_ - t_prev_;
  if (!have_dense_ || h == 0.0) return y_;
  const double theta = (t_interp - t_prev_) / h;
  const double theta1 = 1.0 - theta;
  State out;
  for (int i = 0; i < 6; ++i) {
    out[i] = dense_[0][i] +
             theta * (dense_[1][i] +
                      theta1 * (dense_[2][i] +
                                theta * (dense_[3][i] + theta1 * dense_[4][i])));
  }
  return out;
}

}  // namespace gtrack

#include "gtrack/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "gtrack/ephemeris.hpp"
#include "gtrack/errors.hpp"

namespace gtrack {

void SpacecraftBody::validate() const {
  if (!(mass > 0.0 && drag_area > 0.0 && drag_coeff > 0.0 && srp_area > 0.0 &&
        reflectivity_coeff >= 0.0))
    throw std::invalid_argument("SpacecraftBody: areas, mass and coefficients must be positive");
}

void EnvironmentConfig::validate() const {
  if (zonal_degree != 0 && (zonal_degree < 2 || zonal_degree > 6))
    throw std::invalid_argument("EnvironmentConfig: zonal_degree must be 0 or 2..6");
  if (!(scale_height > 0.0))
    throw std::invalid_argument("EnvironmentConfig: scale_height must be positive");
  if (density_ref < 0.0)
    throw std::invalid_argument("EnvironmentConfig: density_ref must be >= 0");
  if (!(diurnal_amplitude >= 0.0 && diurnal_amplitude < 1.0))
    throw std::invalid_argument("EnvironmentConfig: diurnal_amplitude must be in [0, 1)");
}

RtnBasis RtnBasis::from_state(const InertialState& state) {
  const Vec3 h = state.position.cross(state.velocity);
  const double hn = h.norm();
  if (!(hn > 0.0))
    throw std::domain_error("RtnBasis: degenerate state, |r x v| ~ 0");
  RtnBasis b;
  b.r_hat = state.position.unit();
  b.n_hat = h / hn;
  b.t_hat = b.n_hat.cross(b.r_hat);
  return b;
}

RtnAcceleration RtnBasis::to_rtn(const Vec3& v) const {
  return {v.dot(r_hat), v.dot(t_hat), v.dot(n_hat)};
}

Vec3 RtnBasis::from_rtn(const RtnAcceleration& a) const {
  return r_hat * a.radial + t_hat * a.tangential + n_hat * a.normal;
}

RtnAcceleration eci_to_rtn(const InertialState& state, const Vec3& vector) {
  return RtnBasis::from_state(state).to_rtn(vector);
}

Vec3 accel_zonal_gravity(const Vec3& position, int degree, double mu, double earth_radius) {
  const double r = position.norm();
  const Vec3 central = position * (-mu / (r * r * r));
  if (degree < 2) return central;

  // Zonal potential gradient via the Legendre recurrences in u = sin(lat).
  // The transverse part uses cos(lat)*lat_hat = z_hat - u*r_hat, which stays
  // regular at the poles.
  const double u = position.z / r;
  const double re_r = earth_radius / r;
  const double mu_r2 = mu / (r * r);

  double p_prev = 1.0;  // P_0
  double p_curr = u;    // P_1
  double dp_prev = 0.0;
  double dp_curr = 1.0;
  double re_pow = re_r;

  double radial = 0.0;      // along r_hat
  double transverse = 0.0;  // along (z_hat - u r_hat)

  for (int l = 2; l <= degree && l <= 6; ++l) {
    const double p_next =
        ((2.0 * l - 1.0) * u * p_curr - (l - 1.0) * p_prev) / static_cast<double>(l);
    const double dp_next = dp_prev + (2.0 * l - 1.0) * p_curr;
    p_prev = p_curr;
    p_curr = p_next;
    dp_prev = dp_curr;
    dp_curr = dp_next;
    re_pow *= re_r;

    const double jl = kZonal[l];
    radial += jl * re_pow * (l + 1.0) * p_curr;
    transverse += -jl * re_pow * dp_curr;
  }

  const Vec3 r_hat = position / r;
  const Vec3 lat_dir{-u * r_hat.x, -u * r_hat.y, 1.0 - u * r_hat.z};
  return central + mu_r2 * (radial * r_hat + transverse * lat_dir);
}

double atmosphere_density(const Vec3& position, const EnvironmentConfig& env,
                          const Vec3& sun_direction) {
  const double altitude = position.norm() - kEarthRadius;
  double rho = env.density_ref * std::exp(-(altitude - env.ref_altitude) / env.scale_height);
  if (env.diurnal_amplitude > 0.0) {
    // Bulge direction: sun direction rotated east about the pole by the lag.
    const double cl = std::cos(env.diurnal_lag), sl = std::sin(env.diurnal_lag);
    const Vec3 bulge{cl * sun_direction.x - sl * sun_direction.y,
                     sl * sun_direction.x + cl * sun_direction.y, sun_direction.z};
    rho *= 1.0 + env.diurnal_amplitude * position.unit().dot(bulge.unit());
  }
  return rho;
}

Vec3 accel_drag(const InertialState& state, const SpacecraftBody& body,
                const EnvironmentConfig& env, const Vec3& sun_direction) {
  if (env.density_ref == 0.0) return {};
  const Vec3 omega{0.0, 0.0, kEarthRate};
  const Vec3 v_rel = state.velocity - omega.cross(state.position);
  const double rho = atmosphere_density(state.position, env, sun_direction);
  const double coeff = -0.5 * rho * body.drag_coeff * body.drag_area / body.mass;
  return v_rel * (coeff * v_rel.norm());
}

Vec3 accel_third_body(const Vec3& position, const Vec3& body_position, double mu_body) {
  const Vec3 d = body_position - position;
  const double dn = d.norm();
  const double sn = body_position.norm();
  return d * (mu_body / (dn * dn * dn)) - body_position * (mu_body / (sn * sn * sn));
}

bool in_earth_shadow(const Vec3& position, const Vec3& sun_direction) {
  const Vec3 s_hat = sun_direction.unit();
  const double along = position.dot(s_hat);
  if (along >= 0.0) return false;  // sunward hemisphere
  const Vec3 transverse = position - s_hat * along;
  return transverse.norm() < kEarthRadius;
}

Vec3 accel_srp(const Vec3& position, const SpacecraftBody& body,
               const EnvironmentConfig& env, const Vec3& sun_position) {
  const Vec3 to_sun = sun_position - position;
  if (in_earth_shadow(position, sun_position)) return {};
  const double au_scale = kAstronomicalUnit / sun_position.norm();
  const double accel = env.srp_pressure * au_scale * au_scale * body.reflectivity_coeff *
                       body.srp_area / body.mass;
  return -to_sun.unit() * accel;  // pushes away from the Sun
}

namespace {

InertialState to_state(const Dopri5::State& y, double t) {
  return InertialState{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, t};
}

Dopri5::State to_array(const InertialState& s) {
  return {s.position.x, s.position.y, s.position.z, s.velocity.x, s.velocity.y, s.velocity.z};
}

}  // namespace

Vec3 Propagator::drag_accel(double t, const InertialState& s) const {
  if (env_.density_ref == 0.0) return {};
  const Vec3 sun = sun_position_eci(env_.epoch_jd + t / kSecondsPerDay);
  return accel_drag(s, body_, env_, sun);
}

Vec3 Propagator::total_accel(double t, const InertialState& s) const {
  Vec3 a = accel_zonal_gravity(s.position, env_.zonal_degree, kMu, kEarthRadius);
  const bool need_sun = env_.density_ref > 0.0 || env_.sun_enabled || env_.srp_enabled;
  Vec3 sun;
  if (need_sun) sun = sun_position_eci(env_.epoch_jd + t / kSecondsPerDay);
  if (env_.density_ref > 0.0) a += accel_drag(s, body_, env_, sun);
  if (env_.sun_enabled) a += accel_third_body(s.position, sun, kMuSun);
  if (env_.moon_enabled)
    a += accel_third_body(s.position, moon_position_eci(env_.epoch_jd + t / kSecondsPerDay),
                          kMuMoon);
  if (env_.srp_enabled) a += accel_srp(s.position, body_, env_, sun);
  if (thrust_) a += thrust_(t, s);
  return a;
}

Propagator::Propagator(const InertialState& initial, const SpacecraftBody& body,
                       const EnvironmentConfig& env, const StepControl& control)
    : body_(body), env_(env),
      stepper_(
          [this](double t, const Dopri5::State& y, Dopri5::State& dydt) {
            const InertialState s = to_state(y, t);
            const Vec3 a = total_accel(t, s);
            dydt = {y[3], y[4], y[5], a.x, a.y, a.z};
          },
          initial.epoch, to_array(initial), control),
      state_(initial) {
  body_.validate();
  env_.validate();
}

void Propagator::set_thrust(ThrustAccel thrust) { thrust_ = std::move(thrust); }

const InertialState& Propagator::advance_to(double t) {
  stepper_.advance_to(t);
  state_ = to_state(stepper_.state(), stepper_.time());
  return state_;
}

InertialState Propagator::sample(double t) const {
  return to_state(stepper_.interpolate(t), t);
}

std::vector<InertialState> propagate(const InertialState& initial, double t_end,
                                     const SpacecraftBody& body, const EnvironmentConfig& env,
                                     const ThrustAccel& thrust,
                                     const std::vector<double>& sample_times,
                                     const StepControl& control) {
  Propagator prop(initial, body, env, control);
  prop.set_thrust(thrust);

  std::vector<InertialState> out;
  out.reserve(sample_times.size());
  // Stepper-internal dense output serves the samples inside each step.
  Dopri5 stepper(
      [&prop](double t, const Dopri5::State& y, Dopri5::State& dydt) {
        const InertialState s = to_state(y, t);
        const Vec3 a = prop.total_accel(t, s);
        dydt = {y[3], y[4], y[5], a.x, a.y, a.z};
      },
      initial.epoch, to_array(initial), control);

  std::size_t next = 0;
  while (next < sample_times.size() && sample_times[next] <= initial.epoch + 1e-12) {
    out.push_back(to_state(stepper.state(), stepper.time()));
    ++next;
  }
  while (stepper.time() < t_end - 1e-12) {
    stepper.step(t_end - stepper.time());
    while (next < sample_times.size() && sample_times[next] <= stepper.time() + 1e-12) {
      out.push_back(to_state(stepper.interpolate(sample_times[next]), sample_times[next]));
      ++next;
    }
  }
  return out;
}

double mean_tangential_drag_force(const OrbitalElements& osculating,
                                  const SpacecraftBody& body, const EnvironmentConfig& env,
                                  double mu) {
  const Vec3 sun = sun_position_eci(env.epoch_jd);
  const int n_samples = 720;
  double force_dt = 0.0;
  double total_dt = 0.0;
  OrbitalElements el = osculating;
  el.anomaly_kind = AnomalyKind::True;
  for (int i = 0; i < n_samples; ++i) {
    el.anomaly = kTwoPi * i / n_samples;
    const InertialState s = kep_to_cart(el, mu);
    // Time weight dt ~ r^2 / h per unit true anomaly.
    const double r = s.position.norm();
    const double w = r * r;
    const Vec3 a = accel_drag(s, body, env, sun);
    const RtnAcceleration rtn = eci_to_rtn(s, a);
    force_dt += std::abs(rtn.tangential) * body.mass * w;
    total_dt += w;
  }
  return force_dt / total_dt;
}

}  // namespace gtrack

#include "gtrack/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace gtrack {

namespace {

constexpr double kCircularThreshold = 1e-8;    // e below this: fold omega away
constexpr double kEquatorialThreshold = 1e-8;  // i within this of 0/pi: fold Omega away
constexpr double kKeplerTol = 1e-12;
constexpr int kKeplerMaxIter = 50;

// Signed angle from unit vector a to unit vector b about unit axis n.
double signed_angle(const Vec3& a, const Vec3& b, const Vec3& n) {
  return std::atan2(a.cross(b).dot(n), a.dot(b));
}

}  // namespace

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double wrap_pi(double angle) {
  double w = wrap_two_pi(angle);
  return w >= kPi ? w - kTwoPi : w;
}

double solve_kepler(double mean_anomaly, double eccentricity) {
  if (eccentricity < 0.0 || eccentricity >= 1.0)
    throw std::invalid_argument("solve_kepler: eccentricity outside [0, 1)");
  double ecc_anom = mean_anomaly;
  for (int i = 0; i < kKeplerMaxIter; ++i) {
    const double f = ecc_anom - eccentricity * std::sin(ecc_anom) - mean_anomaly;
    const double fp = 1.0 - eccentricity * std::cos(ecc_anom);
    const double step = f / fp;
    ecc_anom -= step;
    if (std::abs(step) < kKeplerTol) return ecc_anom;
  }
  return ecc_anom;  // e < 0.1 regime converges in a handful of iterations
}

double true_to_eccentric_anomaly(double true_anomaly, double eccentricity) {
  const double e = eccentricity;
  return 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(0.5 * true_anomaly),
                          std::sqrt(1.0 + e) * std::cos(0.5 * true_anomaly));
}

double eccentric_to_true_anomaly(double eccentric_anomaly, double eccentricity) {
  const double e = eccentricity;
  return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * eccentric_anomaly),
                          std::sqrt(1.0 - e) * std::cos(0.5 * eccentric_anomaly));
}

double mean_to_true_anomaly(double mean_anomaly, double eccentricity) {
  return eccentric_to_true_anomaly(solve_kepler(mean_anomaly, eccentricity), eccentricity);
}

double true_to_mean_anomaly(double true_anomaly, double eccentricity) {
  const double ecc_anom = true_to_eccentric_anomaly(true_anomaly, eccentricity);
  return ecc_anom - eccentricity * std::sin(ecc_anom);
}

double OrbitalElements::eccentric_anomaly() const {
  switch (anomaly_kind) {
    case AnomalyKind::Eccentric:
      return anomaly;
    case AnomalyKind::Mean:
      return solve_kepler(anomaly, eccentricity);
    case AnomalyKind::True:
    default:
      return true_to_eccentric_anomaly(anomaly, eccentricity);
  }
}

double OrbitalElements::mean_anomaly() const {
  if (anomaly_kind == AnomalyKind::Mean) return anomaly;
  const double ecc_anom = eccentric_anomaly();
  return ecc_anom - eccentricity * std::sin(ecc_anom);
}

double OrbitalElements::true_anomaly() const {
  if (anomaly_kind == AnomalyKind::True) return anomaly;
  return eccentric_to_true_anomaly(eccentric_anomaly(), eccentricity);
}

void OrbitalElements::validate() const {
  if (!(semi_major_axis > 0.0))
    throw std::invalid_argument("OrbitalElements: semi_major_axis must be > 0");
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw std::invalid_argument("OrbitalElements: eccentricity must be in [0, 1)");
  if (!(inclination >= 0.0 && inclination <= kPi))
    throw std::invalid_argument("OrbitalElements: inclination must be in [0, pi]");
}

AngleTracker AngleTracker::start(double wrapped_angle) {
  AngleTracker t;
  t.last_wrapped = wrap_two_pi(wrapped_angle);
  t.accumulated = t.last_wrapped;
  return t;
}

AngleTracker unwrap(const AngleTracker& tracker, double new_wrapped) {
  const double target = wrap_two_pi(new_wrapped);
  const double step = wrap_pi(target - tracker.last_wrapped);
  if (std::abs(step) >= kPi - 1e-6)
    throw std::invalid_argument("unwrap: step of ~pi between samples, angle is under-sampled");
  AngleTracker out;
  out.last_wrapped = target;
  out.accumulated = tracker.accumulated + step;
  return out;
}

OrbitalElements cart_to_kep(const InertialState& state, double mu) {
  const Vec3& r = state.position;
  const Vec3& v = state.velocity;
  const double rn = r.norm();
  if (!(rn > 0.0)) throw std::domain_error("cart_to_kep: zero position vector");

  const Vec3 h = r.cross(v);
  const double hn = h.norm();
  if (hn < 1e-3 * rn)  // ~mm/s transverse speed, rectilinear for any orbit of interest
    throw std::domain_error("cart_to_kep: degenerate orbit, |r x v| ~ 0");

  const double energy = 0.5 * v.norm2() - mu / rn;
  if (!(energy < 0.0)) throw std::domain_error("cart_to_kep: orbit is not elliptical");

  const Vec3 e_vec = v.cross(h) / mu - r / rn;
  const double e = e_vec.norm();
  if (e >= 1.0 - 1e-12) throw std::domain_error("cart_to_kep: eccentricity >= 1");

  OrbitalElements el;
  el.semi_major_axis = -mu / (2.0 * energy);
  el.eccentricity = e;

  const Vec3 h_hat = h / hn;
  double cos_i = h_hat.z;
  if (cos_i > 1.0) cos_i = 1.0;
  if (cos_i < -1.0) cos_i = -1.0;
  el.inclination = std::acos(cos_i);

  const Vec3 r_hat = r / rn;
  const bool equatorial =
      el.inclination < kEquatorialThreshold || el.inclination > kPi - kEquatorialThreshold;
  const bool circular = e < kCircularThreshold;

  // In-plane reference direction from which periapsis/latitude is measured.
  Vec3 ref;
  if (equatorial) {
    el.raan = 0.0;
    ref = Vec3{1.0, 0.0, 0.0};
  } else {
    const Vec3 node{-h.y, h.x, 0.0};  // z_hat x h
    el.raan = wrap_two_pi(std::atan2(node.y, node.x));
    ref = node.unit();
  }

  if (circular) {
    el.arg_periapsis = 0.0;
    el.anomaly = wrap_two_pi(signed_angle(ref, r_hat, h_hat));  // argument of latitude
  } else {
    const Vec3 e_hat = e_vec / e;
    el.arg_periapsis = wrap_two_pi(signed_angle(ref, e_hat, h_hat));
    el.anomaly = wrap_two_pi(signed_angle(e_hat, r_hat, h_hat));
  }
  el.anomaly_kind = AnomalyKind::True;
  el.variant = ElementVariant::Osculating;
  return el;
}

InertialState kep_to_cart(const OrbitalElements& elements, double mu, double epoch) {
  elements.validate();
  const double a = elements.semi_major_axis;
  const double e = elements.eccentricity;
  const double f = elements.true_anomaly();
  const double p = a * (1.0 - e * e);

  const double cf = std::cos(f), sf = std::sin(f);
  const double rn = p / (1.0 + e * cf);
  const double vs = std::sqrt(mu / p);

  // Perifocal position/velocity.
  const Vec3 r_pf{rn * cf, rn * sf, 0.0};
  const Vec3 v_pf{-vs * sf, vs * (e + cf), 0.0};

  const double cO = std::cos(elements.raan), sO = std::sin(elements.raan);
  const double co = std::cos(elements.arg_periapsis), so = std::sin(elements.arg_periapsis);
  const double ci = std::cos(elements.inclination), si = std::sin(elements.inclination);

  auto rotate = [&](const Vec3& u) {
    return Vec3{(cO * co - sO * so * ci) * u.x + (-cO * so - sO * co * ci) * u.y,
                (sO * co + cO * so * ci) * u.x + (-sO * so + cO * co * ci) * u.y,
                (so * si) * u.x + (co * si) * u.y};
  };

  return InertialState{rotate(r_pf), rotate(v_pf), epoch};
}

namespace {

// First-order J2 short-period variations (osculating minus mean) for the
// near-circular regime. The semi-major axis term is the classical closed form
// in the true anomaly; the in-plane angle, node, inclination and eccentricity
// vector terms are the leading terms for small e.
struct ShortPeriodTerms {
  double da;
  double dgamma;
  double draan;
  double dinc;
  double dex;  // e*cos(omega) in the nodal frame
  double dey;  // e*sin(omega)
};

ShortPeriodTerms j2_short_period(const OrbitalElements& el, double j2, double re) {
  const double a = el.semi_major_axis;
  const double e = el.eccentricity;
  const double f = el.true_anomaly();
  const double u = el.arg_periapsis + f;  // argument of latitude
  const double s2 = std::sin(el.inclination) * std::sin(el.inclination);
  const double eta2 = 1.0 - e * e;
  const double ar = (1.0 + e * std::cos(f)) / eta2;  // a / r
  const double ar3 = ar * ar * ar;
  const double eps = j2 * (re / a) * (re / a);

  const double cos2u = std::cos(2.0 * u), sin2u = std::sin(2.0 * u);
  const double cosu = std::cos(u), sinu = std::sin(u);
  const double cos3u = std::cos(3.0 * u), sin3u = std::sin(3.0 * u);

  ShortPeriodTerms t{};
  t.da = eps * a *
         ((1.0 - 1.5 * s2) * (ar3 - std::pow(eta2, -1.5)) + 1.5 * s2 * ar3 * cos2u);
  t.dgamma = 0.75 * eps * (2.5 * s2 - 1.0) * sin2u;
  t.draan = 0.75 * eps * std::cos(el.inclination) * sin2u;
  t.dinc = 0.75 * eps * std::sin(el.inclination) * std::cos(el.inclination) * cos2u;
  t.dex = 1.5 * eps * ((1.0 - 1.25 * s2) * cosu + (7.0 / 12.0) * s2 * cos3u);
  t.dey = 1.5 * eps * ((1.0 - 1.75 * s2) * sinu + (7.0 / 12.0) * s2 * sin3u);
  return t;
}

OrbitalElements apply_short_period(const OrbitalElements& el, double j2, double re,
                                   double sign, ElementVariant out_variant) {
  el.validate();
  if (el.eccentricity >= 0.1)
    throw std::domain_error("osc/mean conversion: e >= 0.1 is outside the first-order regime");
  if (j2 == 0.0) {
    OrbitalElements out = el;
    out.variant = out_variant;
    return out;
  }

  const ShortPeriodTerms t = j2_short_period(el, j2, re);

  OrbitalElements out = el;
  out.variant = out_variant;
  out.semi_major_axis = el.semi_major_axis + sign * t.da;
  out.raan = wrap_two_pi(el.raan + sign * t.draan);
  out.inclination = el.inclination + sign * t.dinc;

  // Eccentricity via the nodal-frame e-vector; the in-plane phase correction
  // goes to the mean latitude, so omega is carried over and the whole gamma
  // shift lands in the mean anomaly.
  const double ex = el.eccentricity * std::cos(el.arg_periapsis) + sign * t.dex;
  const double ey = el.eccentricity * std::sin(el.arg_periapsis) + sign * t.dey;
  out.eccentricity = std::sqrt(ex * ex + ey * ey);

  out.arg_periapsis = el.arg_periapsis;
  out.anomaly = wrap_two_pi(el.mean_anomaly() + sign * t.dgamma);
  out.anomaly_kind = AnomalyKind::Mean;
  return out;
}

}  // namespace

OrbitalElements osc_to_mean(const OrbitalElements& osculating, double j2,
                            double earth_radius, double mu) {
  (void)mu;
  if (osculating.variant != ElementVariant::Osculating)
    throw std::invalid_argument("osc_to_mean: input variant must be osculating");
  return apply_short_period(osculating, j2, earth_radius, -1.0, ElementVariant::Mean);
}

OrbitalElements mean_to_osc(const OrbitalElements& mean, double j2,
                            double earth_radius, double mu) {
  (void)mu;
  if (mean.variant != ElementVariant::Mean)
    throw std::invalid_argument("mean_to_osc: input variant must be mean");
  return apply_short_period(mean, j2, earth_radius, +1.0, ElementVariant::Osculating);
}

}  // namespace gtrack

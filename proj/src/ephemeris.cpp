#include "gtrack/ephemeris.hpp"

#include <cmath>

#include "gtrack/constants.hpp"

namespace gtrack {

namespace {

constexpr double kObliquity = 23.43929111 * kDegToRad;  // mean obliquity at J2000

Vec3 ecliptic_to_equatorial(double lon, double lat, double dist) {
  const double cl = std::cos(lon), sl = std::sin(lon);
  const double cb = std::cos(lat), sb = std::sin(lat);
  const double ce = std::cos(kObliquity), se = std::sin(kObliquity);
  const Vec3 ecl{cb * cl, cb * sl, sb};
  return Vec3{ecl.x, ce * ecl.y - se * ecl.z, se * ecl.y + ce * ecl.z} * dist;
}

double frac_deg(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  return d * kDegToRad;
}

}  // namespace

Vec3 sun_position_eci(double jd) {
  const double t = (jd - kJd2000) / 36525.0;
  const double mean_anom = frac_deg(357.5256 + 35999.049 * t);
  const double lon = frac_deg(282.94 + 357.5256 + 35999.049 * t) +
                     (6892.0 * std::sin(mean_anom) + 72.0 * std::sin(2.0 * mean_anom)) /
                         3600.0 * kDegToRad;
  const double dist =
      (149.619 - 2.499 * std::cos(mean_anom) - 0.021 * std::cos(2.0 * mean_anom)) * 1e9;
  return ecliptic_to_equatorial(lon, 0.0, dist);
}

Vec3 moon_position_eci(double jd) {
  const double t = (jd - kJd2000) / 36525.0;
  const double l0 = frac_deg(218.31617 + 481267.88088 * t - 1.3972 * t);
  const double l = frac_deg(134.96292 + 477198.86753 * t);    // Moon mean anomaly
  const double lp = frac_deg(357.52543 + 35999.04944 * t);    // Sun mean anomaly
  const double f = frac_deg(93.27283 + 483202.01873 * t);     // argument of latitude
  const double d = frac_deg(297.85027 + 445267.11135 * t);    // mean elongation

  const double arcsec = kDegToRad / 3600.0;
  const double dlon =
      (22640.0 * std::sin(l) + 769.0 * std::sin(2 * l) - 4586.0 * std::sin(l - 2 * d) +
       2370.0 * std::sin(2 * d) - 668.0 * std::sin(lp) - 412.0 * std::sin(2 * f) -
       212.0 * std::sin(2 * l - 2 * d) - 206.0 * std::sin(l + lp - 2 * d) +
       192.0 * std::sin(l + 2 * d) - 165.0 * std::sin(lp - 2 * d) +
       148.0 * std::sin(l - lp) - 125.0 * std::sin(d) - 110.0 * std::sin(l + lp) -
       55.0 * std::sin(2 * f - 2 * d)) *
      arcsec;
  const double lon = l0 + dlon;

  const double s = f + dlon + (412.0 * std::sin(2 * f) + 541.0 * std::sin(lp)) * arcsec;
  const double h = f - 2 * d;
  const double lat =
      (18520.0 * std::sin(s) - 526.0 * std::sin(h) + 44.0 * std::sin(l + h) -
       31.0 * std::sin(-l + h) - 25.0 * std::sin(-2 * l + f) -
       23.0 * std::sin(lp + h) + 21.0 * std::sin(-l + f) +
       11.0 * std::sin(-lp + f - 2 * d)) *
      arcsec;

  const double dist =
      (385000.0 - 20905.0 * std::cos(l) - 3699.0 * std::cos(2 * d - l) -
       2956.0 * std::cos(2 * d) - 570.0 * std::cos(2 * l) +
       246.0 * std::cos(2 * l - 2 * d) - 205.0 * std::cos(lp - 2 * d) -
       171.0 * std::cos(l + 2 * d) - 152.0 * std::cos(l + lp - 2 * d)) *
      1e3;

  return ecliptic_to_equatorial(lon, lat, dist);
}

}  // namespace gtrack

#pragma once

// Physical constants used throughout the library. Gravity and Earth figure
// values follow WGS-84/EGM conventions; zonal coefficients beyond J2 are the
// customary unnormalized values.

namespace gtrack {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kDegToRad = kPi / 180.0;

inline constexpr double kMu = 3.986004418e14;       // Earth GM [m^3/s^2]
inline constexpr double kEarthRadius = 6378137.0;   // equatorial radius [m]
inline constexpr double kEarthRate = 7.2921159e-5;  // rotation rate [rad/s]
inline constexpr double kJ2 = 1.08263e-3;

// Unnormalized zonal coefficients J2..J6, indexed by degree.
inline constexpr double kZonal[7] = {
    0.0, 0.0, 1.08263e-3, -2.5323e-6, -1.6204e-6, -2.2730e-7, 5.4060e-7};

inline constexpr double kAstronomicalUnit = 1.495978707e11;  // [m]
inline constexpr double kMuSun = 1.32712440018e20;           // [m^3/s^2]
inline constexpr double kMuMoon = 4.9028e12;                 // [m^3/s^2]
inline constexpr double kSrpPressure1Au = 4.56e-6;           // [N/m^2]

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kJd2000 = 2451545.0;  // J2000.0 epoch [JD]

}  // namespace gtrack

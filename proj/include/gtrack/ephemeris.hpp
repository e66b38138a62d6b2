#pragma once

#include "gtrack/vec3.hpp"

namespace gtrack {

// Low-precision analytic solar and lunar positions (truncated mean-element
// series, arcminute-class accuracy), geocentric equatorial frame, meters.
// Adequate for LEO third-body and solar-pressure perturbations, which sit at
// the 1e-11..1e-8 m/s^2 level.
Vec3 sun_position_eci(double jd);
Vec3 moon_position_eci(double jd);

}  // namespace gtrack

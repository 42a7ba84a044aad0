#pragma once

#include <string>

#include "dcag/engine.hpp"

namespace dcag {

/// Wide CSV: header `t,<node ids sorted ascending>,system_risk`, one row
/// per slice, values with exactly 9 decimal places.
std::string write_trajectory_csv(const Trajectory& traj);

}  // namespace dcag

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dcag/csv.hpp"

namespace dcag {
namespace {

// Exactly 9 decimal places, matching the reported table precision.
std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

}  // namespace

std::string write_trajectory_csv(const Trajectory& traj) {
  std::vector<NodeId> ids;
  if (!traj.states.empty())
    for (const auto& [id, value] : traj.states.front().values) ids.push_back(id);
  std::sort(ids.begin(), ids.end());

  std::ostringstream out;
  out << "t";
  for (const auto& id : ids) out << "," << id;
  out << ",system_risk\n";

  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const SliceState& st = traj.states[i];
    out << st.t;
    for (const auto& id : ids) out << "," << fixed9(st.values.at(id));
    double sr = i < traj.system_risk.size() ? traj.system_risk[i] : 0.0;
    out << "," << fixed9(sr) << "\n";
  }
  return out.str();
}

}  // namespace dcag

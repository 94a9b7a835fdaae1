#include "bandlab/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace bandlab {

DualIndex rotate_index_orbit_pow(DualIndex m, int j) {
  j = ((j % 4) + 4) % 4;
  for (int i = 0; i < j; ++i) m = rotate_index_orbit(m);
  return m;
}

KPath path_through(const std::vector<Vec2>& waypoints, int samples_per_segment) {
  if (waypoints.size() < 2) throw std::invalid_argument("path needs at least two waypoints");
  if (samples_per_segment < 2) throw std::invalid_argument("need at least two samples per segment");

  KPath path;
  path.waypoints = waypoints;
  path.samples_per_segment = samples_per_segment;

  double s = 0.0;
  for (std::size_t seg = 0; seg + 1 < waypoints.size(); ++seg) {
    const Vec2 a = waypoints[seg];
    const Vec2 b = waypoints[seg + 1];
    const double len = (b - a).norm();
    // The shared endpoint between consecutive segments is emitted once.
    const int first = (seg == 0) ? 0 : 1;
    for (int i = first; i < samples_per_segment; ++i) {
      const double t = static_cast<double>(i) / (samples_per_segment - 1);
      path.samples.push_back(a + t * (b - a));
      path.arclength.push_back(s + t * len);
    }
    s += len;
  }
  return path;
}

KPath standard_path(int samples_per_segment) {
  return path_through({point_gamma, point_x, point_m, point_gamma}, samples_per_segment);
}

OrbitTable::OrbitTable(int truncation) : truncation_(truncation) {
  if (truncation < 1) throw std::invalid_argument("orbit table truncation must be >= 1");

  const DualIndex vertex_rep{-1, 0};
  for (int m1 = -truncation - 1; m1 <= truncation; ++m1) {
    for (int m2 = -truncation - 1; m2 <= truncation; ++m2) {
      const DualIndex m{m1, m2};
      if (orbit_of_.contains(m)) continue;

      DualIndex members[4];
      members[0] = m;
      for (int j = 1; j < 4; ++j) members[j] = rotate_index_orbit(members[j - 1]);

      DualIndex rep = *std::min_element(members, members + 4);
      if (vertex_shell(m) == 0) rep = vertex_rep;  // distinguished vertex orbit

      const int rep_pos_in_cycle =
          static_cast<int>(std::find(members, members + 4, rep) - members);
      representatives_.push_back(rep);
      if (rep == vertex_rep) vertex_rep_pos_ = static_cast<int>(representatives_.size()) - 1;
      for (int j = 0; j < 4; ++j) {
        // members[j] = R^j m = R^(j - rep_pos) rep
        const int power = ((j - rep_pos_in_cycle) % 4 + 4) % 4;
        orbit_of_[members[j]] = OrbitRef{rep, power};
      }
    }
  }
}

const OrbitRef& OrbitTable::orbit_of(DualIndex m) const {
  const auto it = orbit_of_.find(m);
  if (it == orbit_of_.end()) throw std::out_of_range("index not in orbit table");
  return it->second;
}

}  // namespace bandlab

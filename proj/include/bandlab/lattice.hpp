#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <numbers>
#include <vector>

namespace bandlab {

using Vec2 = Eigen::Vector2d;

inline constexpr double pi = std::numbers::pi;

/// Integer coefficients of the dual basis k1 = (2*pi, 0), k2 = (0, 2*pi).
struct DualIndex {
  int m1 = 0;
  int m2 = 0;

  friend auto operator<=>(const DualIndex&, const DualIndex&) = default;
};

inline Vec2 dual_vector(DualIndex m) { return {2.0 * pi * m.m1, 2.0 * pi * m.m2}; }

// High-symmetry points of the Brillouin zone [-pi,pi]^2.
inline const Vec2 point_gamma{0.0, 0.0};
inline const Vec2 point_x{pi, 0.0};
inline const Vec2 point_m{pi, pi};

/// M + 2*pi*(m1, m2), the plane-wave momentum attached to index m.
inline Vec2 momentum_at_M(DualIndex m) { return point_m + dual_vector(m); }

/// m1^2 + m2^2 + m1 + m2; vanishes exactly on the four vertex indices
/// {(0,0),(0,-1),(-1,-1),(-1,0)} and is >= 1 elsewhere.
inline long vertex_shell(DualIndex m) {
  return static_cast<long>(m.m1) * m.m1 + static_cast<long>(m.m2) * m.m2 + m.m1 + m.m2;
}

/// |M + 2*pi*m|^2 evaluated without cancellation: 2*pi^2 + (2*pi)^2 * vertex_shell.
inline double kinetic_at_M(DualIndex m) {
  return 2.0 * pi * pi + 4.0 * pi * pi * static_cast<double>(vertex_shell(m));
}

/// Coefficient-index rotation (m1, m2) -> (-m2, m1); order four.
inline DualIndex rotate_index_tilde(DualIndex m) { return {-m.m2, m.m1}; }

/// Orbit map on M-pseudo-periodic indices: (m1, m2) -> (m2, -1-m1); order four,
/// preserves |M + 2*pi*m|.
inline DualIndex rotate_index_orbit(DualIndex m) { return {m.m2, -1 - m.m1}; }

/// j-th iterate of rotate_index_orbit, j taken mod 4.
DualIndex rotate_index_orbit_pow(DualIndex m, int j);

/// Sampled quasi-momentum path through a list of waypoints.
struct KPath {
  std::vector<Vec2> waypoints;
  int samples_per_segment = 0;
  std::vector<Vec2> samples;
  std::vector<double> arclength;  // cumulative, same length as samples
};

KPath path_through(const std::vector<Vec2>& waypoints, int samples_per_segment);

/// Closed circuit Gamma -> X -> M -> Gamma.
KPath standard_path(int samples_per_segment);

struct OrbitRef {
  DualIndex representative;
  int power = 0;  // this index equals rotate_index_orbit_pow(representative, power)
};

/// Partition of the truncated index box {-N-1..N}^2 into complete 4-orbits of
/// the orbit map. The box is closed under the map, so no orbit straddles the
/// boundary. Representatives are the lexicographically smallest orbit member,
/// except the vertex orbit {(0,0),(0,-1),(-1,-1),(-1,0)} whose representative
/// is fixed to (-1,0).
class OrbitTable {
 public:
  explicit OrbitTable(int truncation);

  int truncation() const { return truncation_; }
  const std::vector<DualIndex>& representatives() const { return representatives_; }
  const OrbitRef& orbit_of(DualIndex m) const;
  bool contains(DualIndex m) const { return orbit_of_.contains(m); }

  /// Position of the vertex-orbit representative (-1,0) in representatives().
  int vertex_representative_position() const { return vertex_rep_pos_; }

 private:
  int truncation_;
  std::vector<DualIndex> representatives_;
  std::map<DualIndex, OrbitRef> orbit_of_;
  int vertex_rep_pos_ = -1;
};

}  // namespace bandlab

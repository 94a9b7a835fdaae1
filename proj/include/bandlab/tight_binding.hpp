#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bandlab/lattice.hpp"
#include "bandlab/potential.hpp"

namespace bandlab {

/// The three bands of the nearest-neighbor Lieb-lattice tight-binding model.
struct TBBands {
  Vec2 k;
  double E_minus = 0.0;
  double E_zero = 0.0;  // exactly flat
  double E_plus = 0.0;  // sqrt(4 + 2 cos k1 + 2 cos k2)
};

/// 3x3 Bloch matrix
///   [ 0            1+e^{i k2}   0          ]
///   [ 1+e^{-i k2}  0            1+e^{-i k1}]
///   [ 0            1+e^{i k1}   0          ].
Eigen::Matrix3cd tb_matrix(Vec2 k);

TBBands tb_bands(Vec2 k);

std::vector<TBBands> tb_band_structure(const KPath& path);

/// Strong-binding contrast data near M for one well depth of the Gaussian
/// Lieb family: the three lowest continuum bands at M, the gap between the
/// touching pair and the third band, the local gap law of the touching pair,
/// and the third band's deviation from flatness over a kappa-disc.
struct TBContrastEntry {
  double depth = 0.0;
  Eigen::Vector3d mu_at_M;       // three lowest eigenvalues at M
  int pair_lo = 0;               // index into mu_at_M of the touching pair's
                                 // lower member (the adjacent pair with the
                                 // smaller gap among the three lowest bands)
  double pair_third_gap = 0.0;   // |mu_third - mean(pair)| at M
  double pair_split_at_M = 0.0;  // split within the pair at M (0 when touching)
  double gap_over_kappa = 0.0;    // pair gap / |kappa| at the probe radius
  double gap_over_kappa_sq = 0.0; // pair gap / |kappa|^2 at the probe radius
  double flatness_deviation = 0.0;  // max over the disc of the drift of the
                                    // band continuing mu_third
};

struct TBContrastReport {
  double sigma = 0.0;
  std::vector<TBContrastEntry> entries;
};

/// Evaluates the entries for each depth in V0_list using Gaussian wells of
/// width sigma on the Lieb lattice {(0,0),(1/2,0),(0,1/2)} (all signs -1).
TBContrastReport tb_contrast_report(const std::vector<double>& V0_list, double sigma,
                                    int truncation, double probe_radius = 1e-2,
                                    int threads = 1);

}  // namespace bandlab

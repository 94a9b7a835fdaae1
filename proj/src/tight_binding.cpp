#include "bandlab/tight_binding.hpp"

#include <cmath>
#include <limits>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/normal_form.hpp"

namespace bandlab {

Eigen::Matrix3cd tb_matrix(Vec2 k) {
  const Complex e1 = std::polar(1.0, k[0]);
  const Complex e2 = std::polar(1.0, k[1]);
  Eigen::Matrix3cd A = Eigen::Matrix3cd::Zero();
  A(0, 1) = 1.0 + e2;
  A(1, 0) = 1.0 + std::conj(e2);
  A(1, 2) = 1.0 + std::conj(e1);
  A(2, 1) = 1.0 + e1;
  return A;
}

TBBands tb_bands(Vec2 k) {
  TBBands b;
  b.k = k;
  b.E_plus = std::sqrt(std::max(0.0, 4.0 + 2.0 * std::cos(k[0]) + 2.0 * std::cos(k[1])));
  b.E_minus = -b.E_plus;
  return b;
}

std::vector<TBBands> tb_band_structure(const KPath& path) {
  std::vector<TBBands> out;
  out.reserve(path.samples.size());
  for (const Vec2& k : path.samples) out.push_back(tb_bands(k));
  return out;
}

TBContrastReport tb_contrast_report(const std::vector<double>& V0_list, double sigma,
                                    int truncation, double probe_radius, int threads) {
  const std::vector<Vec2> lieb_centers{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
  const std::vector<int> signs{-1, -1, -1};
  const PlaneWaveBasis basis(truncation);

  TBContrastReport report;
  report.sigma = sigma;
  for (double depth : V0_list) {
    const FourierPotential V = from_gaussian_lattice(lieb_centers, signs, depth, sigma,
                                                     2 * truncation + 1);
    TBContrastEntry e;
    e.depth = depth;

    const Eigen::VectorXd muM = eigenvalues_only(assemble(V, 1.0, point_m, basis), 4);
    e.mu_at_M = muM.head<3>();
    // The touching pair is the adjacent pair with the smaller gap among the
    // three lowest bands; the remaining band may sit below or above it.
    e.pair_lo = (muM[1] - muM[0] <= muM[2] - muM[1]) ? 0 : 1;
    const double pair_mean = 0.5 * (muM[e.pair_lo] + muM[e.pair_lo + 1]);
    const int third = (e.pair_lo == 0) ? 2 : 0;
    e.pair_split_at_M = muM[e.pair_lo + 1] - muM[e.pair_lo];
    e.pair_third_gap = std::abs(muM[third] - pair_mean);

    // Probe the local gap law of the touching pair along a generic direction,
    // and the third band's flatness, over a small disc around M. Bands are
    // tracked by proximity to their values at M.
    constexpr int n_probe = 8;
    std::vector<Eigen::VectorXd> probes(n_probe);
    parallel_for(n_probe, threads, [&](int i) {
      const double theta = 2.0 * pi * i / n_probe;
      const Vec2 kappa = probe_radius * Vec2{std::cos(theta), std::sin(theta)};
      probes[i] = eigenvalues_only(assemble(V, 1.0, point_m + kappa, basis), 4);
    });
    double flat_dev = 0.0;
    double gap = 0.0;
    for (const Eigen::VectorXd& mu : probes) {
      const auto pair = pair_nearest(mu, pair_mean);
      gap = std::max(gap, pair.second - pair.first);
      double third_dev = std::numeric_limits<double>::infinity();
      for (int b = 0; b < mu.size(); ++b)
        third_dev = std::min(third_dev, std::abs(mu[b] - muM[third]));
      flat_dev = std::max(flat_dev, third_dev);
    }
    e.gap_over_kappa = gap / probe_radius;
    e.gap_over_kappa_sq = gap / (probe_radius * probe_radius);
    e.flatness_deviation = flat_dev;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace bandlab

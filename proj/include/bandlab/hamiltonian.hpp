#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bandlab/lattice.hpp"
#include "bandlab/potential.hpp"

namespace bandlab {

/// Truncated plane-wave index set {-N-1..N}^2 with a fixed row-major ordering
/// defining the matrix layout. The box is closed under the orbit rotation.
class PlaneWaveBasis {
 public:
  explicit PlaneWaveBasis(int truncation);

  int truncation() const { return truncation_; }
  int dim() const { return static_cast<int>(indices_.size()); }
  const std::vector<DualIndex>& indices() const { return indices_; }
  DualIndex index(int pos) const { return indices_[pos]; }

  /// Position of m in the ordering, or -1 if outside the box.
  int position(DualIndex m) const;

 private:
  int truncation_;
  std::vector<DualIndex> indices_;
};

struct BlochMatrix {
  Vec2 k;
  Eigen::MatrixXcd entries;
};

/// H(k)[m][n] = |k + 2*pi*m|^2 delta_mn + eps * V_{m-n}.
BlochMatrix assemble(const FourierPotential& V, double eps, Vec2 k,
                     const PlaneWaveBasis& basis);

struct EigenSolution {
  Eigen::VectorXd values;   // lowest B, ascending
  Eigen::MatrixXcd vectors;  // dim x B, orthonormal; phase: largest entry real > 0
};

/// Dense Hermitian diagonalization keeping the lowest num_bands pairs.
/// Throws if the matrix is non-Hermitian beyond 1e-12 relative.
EigenSolution eigensolve(const BlochMatrix& H, int num_bands);

/// Same, eigenvalues only.
Eigen::VectorXd eigenvalues_only(const BlochMatrix& H, int num_bands);

struct BandStructure {
  KPath path;                       // empty waypoints in grid mode
  int grid_resolution = 0;          // (n_k+1)^2 samples over [-pi,pi]^2 in grid mode
  std::vector<Vec2> k_samples;
  std::vector<double> arclength;    // path arclength, or row-major grid index
  Eigen::MatrixXd bands;            // n_samples x B, each row ascending
};

BandStructure band_structure(const FourierPotential& V, double eps, const KPath& path,
                             int num_bands, const PlaneWaveBasis& basis,
                             int threads = 1);

BandStructure surfaces_on_grid(const FourierPotential& V, double eps, int grid_resolution,
                               int num_bands, const PlaneWaveBasis& basis,
                               int threads = 1);

struct DegeneracyCluster {
  double value = 0.0;  // cluster mean
  int multiplicity = 0;
};

/// Clusters the lowest num_bands eigenvalues by gaps below cluster_tol.
std::vector<DegeneracyCluster> detect_degeneracy(const BlochMatrix& H, int num_bands,
                                                 double cluster_tol);
std::vector<DegeneracyCluster> cluster_eigenvalues(const Eigen::VectorXd& values,
                                                   double cluster_tol);

inline double default_cluster_tol(double mu) { return 1e-7 * (1.0 + std::abs(mu)); }

/// Run fn(i) for i in [0, count) over the given number of worker threads.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace bandlab

#include "bandlab/hamiltonian.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bandlab {

PlaneWaveBasis::PlaneWaveBasis(int truncation) : truncation_(truncation) {
  if (truncation < 1) throw std::invalid_argument("basis truncation must be >= 1");
  indices_.reserve((2 * truncation + 2) * (2 * truncation + 2));
  for (int m1 = -truncation - 1; m1 <= truncation; ++m1)
    for (int m2 = -truncation - 1; m2 <= truncation; ++m2)
      indices_.push_back({m1, m2});
}

int PlaneWaveBasis::position(DualIndex m) const {
  if (m.m1 < -truncation_ - 1 || m.m1 > truncation_ || m.m2 < -truncation_ - 1 ||
      m.m2 > truncation_)
    return -1;
  const int side = 2 * truncation_ + 2;
  return (m.m1 + truncation_ + 1) * side + (m.m2 + truncation_ + 1);
}

BlochMatrix assemble(const FourierPotential& V, double eps, Vec2 k,
                     const PlaneWaveBasis& basis) {
  const int dim = basis.dim();
  BlochMatrix H{k, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    const DualIndex m = basis.index(i);
    const Vec2 km = k + dual_vector(m);
    H.entries(i, i) = km.squaredNorm();
    if (eps == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const DualIndex n = basis.index(j);
      H.entries(i, j) += eps * V.coefficient({m.m1 - n.m1, m.m2 - n.m2});
    }
  }
  return H;
}

namespace {

void check_hermitian(const Eigen::MatrixXcd& H) {
  const double scale = H.cwiseAbs().maxCoeff();
  const double defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * std::max(scale, 1.0))
    throw std::runtime_error("assembled Bloch matrix is not Hermitian");
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  int imax = 0;
  double amax = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > amax * (1.0 + 1e-12)) {
      amax = a;
      imax = i;
    }
  }
  if (amax == 0.0) return;
  v *= std::conj(v[imax]) / amax;
}

}  // namespace

EigenSolution eigensolve(const BlochMatrix& H, int num_bands) {
  if (num_bands < 1 || num_bands > H.entries.rows())
    throw std::invalid_argument("invalid band count");
  check_hermitian(H.entries);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");

  EigenSolution out;
  out.values = solver.eigenvalues().head(num_bands);
  out.vectors = solver.eigenvectors().leftCols(num_bands);
  for (int b = 0; b < num_bands; ++b) fix_phase(out.vectors.col(b));
  return out;
}

Eigen::VectorXd eigenvalues_only(const BlochMatrix& H, int num_bands) {
  if (num_bands < 1 || num_bands > H.entries.rows())
    throw std::invalid_argument("invalid band count");
  check_hermitian(H.entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.entries,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  return solver.eigenvalues().head(num_bands);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

BandStructure solve_samples(const FourierPotential& V, double eps,
                            std::vector<Vec2> k_samples, std::vector<double> arclength,
                            int num_bands, const PlaneWaveBasis& basis, int threads) {
  BandStructure out;
  out.k_samples = std::move(k_samples);
  out.arclength = std::move(arclength);
  const int n = static_cast<int>(out.k_samples.size());
  out.bands.resize(n, num_bands);
  parallel_for(n, threads, [&](int i) {
    const BlochMatrix H = assemble(V, eps, out.k_samples[i], basis);
    out.bands.row(i) = eigenvalues_only(H, num_bands).transpose();
  });
  return out;
}

}  // namespace

BandStructure band_structure(const FourierPotential& V, double eps, const KPath& path,
                             int num_bands, const PlaneWaveBasis& basis, int threads) {
  BandStructure out =
      solve_samples(V, eps, path.samples, path.arclength, num_bands, basis, threads);
  out.path = path;
  return out;
}

BandStructure surfaces_on_grid(const FourierPotential& V, double eps,
                               int grid_resolution, int num_bands,
                               const PlaneWaveBasis& basis, int threads) {
  if (grid_resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  std::vector<Vec2> ks;
  std::vector<double> index;
  for (int i = 0; i <= grid_resolution; ++i)
    for (int j = 0; j <= grid_resolution; ++j) {
      ks.push_back({-pi + 2.0 * pi * i / grid_resolution,
                    -pi + 2.0 * pi * j / grid_resolution});
      index.push_back(static_cast<double>(ks.size() - 1));
    }
  BandStructure out =
      solve_samples(V, eps, std::move(ks), std::move(index), num_bands, basis, threads);
  out.grid_resolution = grid_resolution;
  return out;
}

std::vector<DegeneracyCluster> cluster_eigenvalues(const Eigen::VectorXd& values,
                                                   double cluster_tol) {
  if (cluster_tol <= 0.0) throw std::invalid_argument("cluster tolerance must be > 0");
  std::vector<DegeneracyCluster> clusters;
  int start = 0;
  for (int i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > cluster_tol) {
      DegeneracyCluster c;
      c.multiplicity = i - start;
      c.value = values.segment(start, c.multiplicity).mean();
      clusters.push_back(c);
      start = i;
    }
  }
  return clusters;
}

std::vector<DegeneracyCluster> detect_degeneracy(const BlochMatrix& H, int num_bands,
                                                 double cluster_tol) {
  return cluster_eigenvalues(eigenvalues_only(H, num_bands), cluster_tol);
}

}  // namespace bandlab

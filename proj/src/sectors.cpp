#include "bandlab/sectors.hpp"

#include <stdexcept>

namespace bandlab {

Complex sector_sigma(Sector s) {
  switch (s) {
    case Sector::plus_one: return {1.0, 0.0};
    case Sector::minus_one: return {-1.0, 0.0};
    case Sector::plus_i: return {0.0, 1.0};
    case Sector::minus_i: return {0.0, -1.0};
  }
  throw std::logic_error("bad sector");
}

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::plus_one: return "+1";
    case Sector::minus_one: return "-1";
    case Sector::plus_i: return "+i";
    case Sector::minus_i: return "-i";
  }
  throw std::logic_error("bad sector");
}

Sector conjugate_sector(Sector s) {
  switch (s) {
    case Sector::plus_i: return Sector::minus_i;
    case Sector::minus_i: return Sector::plus_i;
    default: return s;
  }
}

Complex kernel_K_sigma(const FourierPotential& V, Sector s, DualIndex m, DualIndex r) {
  const Complex sigma = sector_sigma(s);
  Complex sum = 0.0;
  Complex weight = 1.0;  // sigma^{4-j} for j = 0 is sigma^4 = 1
  DualIndex rj = r;
  for (int j = 0; j < 4; ++j) {
    sum += weight * V.coefficient({m.m1 - rj.m1, m.m2 - rj.m2});
    rj = rotate_index_orbit(rj);
    weight /= sigma;  // sigma^{4-(j+1)}
  }
  return sum;
}

Eigen::MatrixXcd sector_matrix(const FourierPotential& V, double eps, Sector s,
                               const OrbitTable& table, double* defect_out) {
  const auto& reps = table.representatives();
  const int n = static_cast<int>(reps.size());
  Eigen::MatrixXcd K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      K(i, j) = kernel_K_sigma(V, s, reps[i], reps[j]);

  const double scale = std::max(1.0, V.max_abs());
  const double defect = (K - K.adjoint()).cwiseAbs().maxCoeff() / scale;
  if (defect_out) *defect_out = defect;
  if (defect > 1e-6)
    throw std::runtime_error("sector kernel is not Hermitian: potential not admissible");

  Eigen::MatrixXcd H = 0.5 * eps * (K + K.adjoint().eval());
  for (int i = 0; i < n; ++i) H(i, i) += kinetic_at_M(reps[i]);
  return H;
}

SectorSpectrum sector_spectrum(const FourierPotential& V, double eps, Sector s,
                               const OrbitTable& table, int num_bands) {
  SectorSpectrum out;
  out.sector = s;
  const Eigen::MatrixXcd H = sector_matrix(V, eps, s, table, &out.hermiticity_defect);
  if (num_bands < 1 || num_bands > H.rows())
    throw std::invalid_argument("invalid sector band count");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("sector eigensolver failed to converge");
  out.eigenvalues = solver.eigenvalues().head(num_bands);
  out.coefficients = solver.eigenvectors().leftCols(num_bands);
  return out;
}

Eigen::VectorXcd synthesize_eigenfunction(Sector s, const Eigen::VectorXcd& coeffs,
                                          const OrbitTable& table,
                                          const PlaneWaveBasis& basis) {
  const auto& reps = table.representatives();
  if (coeffs.size() != static_cast<Eigen::Index>(reps.size()))
    throw std::invalid_argument("coefficient vector does not match representatives");
  if (table.truncation() != basis.truncation())
    throw std::invalid_argument("orbit table and basis truncations differ");

  const Complex sigma = sector_sigma(s);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(basis.dim());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    DualIndex m = reps[i];
    Complex weight = 1.0;  // sigma^{4-j} at j = 0
    for (int j = 0; j < 4; ++j) {
      full[basis.position(m)] = weight * coeffs[static_cast<Eigen::Index>(i)];
      m = rotate_index_orbit(m);
      weight /= sigma;
    }
  }
  const double norm = full.norm();
  if (norm > 0.0) full /= norm;
  return full;
}

Eigen::VectorXcd rotate_state(const Eigen::VectorXcd& v, const PlaneWaveBasis& basis) {
  if (v.size() != basis.dim()) throw std::invalid_argument("vector does not match basis");
  Eigen::VectorXcd out(v.size());
  for (int i = 0; i < basis.dim(); ++i) {
    const int j = basis.position(rotate_index_orbit(basis.index(i)));
    out[j] = v[i];
  }
  return out;
}

std::optional<Sector> classify_state(const Eigen::VectorXcd& v,
                                     const PlaneWaveBasis& basis, double tol) {
  const Eigen::VectorXcd w = rotate_state(v, basis);
  std::optional<Sector> found;
  for (Sector s : all_sectors) {
    if ((w - sector_sigma(s) * v).norm() <= tol) {
      if (found) return std::nullopt;  // degenerate only for v ~ 0
      found = s;
    }
  }
  return found;
}

Eigen::VectorXcd pc_conjugate(const Eigen::VectorXcd& v) { return v.conjugate(); }

}  // namespace bandlab

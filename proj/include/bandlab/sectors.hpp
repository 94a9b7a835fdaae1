#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/lattice.hpp"
#include "bandlab/potential.hpp"

namespace bandlab {

/// Rotation eigenvalue sigma in {+1, -1, +i, -i} labeling the four
/// rotation eigenspaces of L^2_M.
enum class Sector { plus_one, minus_one, plus_i, minus_i };

inline constexpr Sector all_sectors[] = {Sector::plus_one, Sector::minus_one,
                                         Sector::plus_i, Sector::minus_i};

Complex sector_sigma(Sector s);
const char* sector_name(Sector s);
Sector conjugate_sector(Sector s);

/// K_sigma(m, r) = sum_{j=0..3} sigma^{4-j} V_{m - R^j r}.
Complex kernel_K_sigma(const FourierPotential& V, Sector s, DualIndex m, DualIndex r);

/// Reduced M-point Hamiltonian over orbit representatives:
/// entry (m, r) = |M^m|^2 delta_mr + eps * K_sigma(m, r), Hermitian-symmetrized.
/// defect_out, when non-null, receives the pre-symmetrization Hermiticity defect.
/// A defect above 1e-6 aborts (non-admissible potential).
Eigen::MatrixXcd sector_matrix(const FourierPotential& V, double eps, Sector s,
                               const OrbitTable& table, double* defect_out = nullptr);

struct SectorSpectrum {
  Sector sector;
  Eigen::VectorXd eigenvalues;       // lowest B, ascending
  Eigen::MatrixXcd coefficients;     // |S| x B, columns unit-norm over S
  double hermiticity_defect = 0.0;   // pre-symmetrization
};

SectorSpectrum sector_spectrum(const FourierPotential& V, double eps, Sector s,
                               const OrbitTable& table, int num_bands);

/// Full plane-wave vector with c(R^j m) = sigma^{4-j} c(m), unit-normalized.
/// The orbit table and basis must share the same truncation.
Eigen::VectorXcd synthesize_eigenfunction(Sector s, const Eigen::VectorXcd& coeffs,
                                          const OrbitTable& table,
                                          const PlaneWaveBasis& basis);

/// Rotation acting on full coefficient vectors: c_out(R m) = c_in(m).
Eigen::VectorXcd rotate_state(const Eigen::VectorXcd& v, const PlaneWaveBasis& basis);

/// Sector label of a unit vector, or nullopt when it is not a rotation
/// eigenvector to within tol ("mixed").
std::optional<Sector> classify_state(const Eigen::VectorXcd& v,
                                     const PlaneWaveBasis& basis, double tol);

/// Parity-conjugation: coefficientwise complex conjugation in the
/// M-pseudo-periodic representation; maps the +i sector to the -i sector.
Eigen::VectorXcd pc_conjugate(const Eigen::VectorXcd& v);

}  // namespace bandlab

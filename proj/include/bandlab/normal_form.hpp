#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/potential.hpp"

namespace bandlab {

/// A^{j1,j2}(l,m) = a^{j1,j2}_{l,m}, the resolvent quadratic forms built from
/// the gradients of the degenerate pair {Phi1, Phi2} at M.
struct AMatrices {
  Eigen::Matrix2cd A11 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd A12 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd A21 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd A22 = Eigen::Matrix2cd::Zero();
};

struct StructureDefects {
  double hermiticity = 0.0;  // max of ||A11 - A11^dag||, ||A21 - A12^dag||, |Im alpha|
  double rotation = 0.0;     // max of ||R^T A11 R - A11||, ||R^T A12 R + A12||
  double reflection = 0.0;   // |gamma| / (|beta| + 1)
};

struct NormalFormCoefficients {
  double mu_S = 0.0;
  double alpha = 0.0;
  Complex beta;
  Complex gamma;
  std::string source;  // "resolvent" | "fit" | "leading-order"
};

/// Coefficient vectors of the partial derivatives of a state at the M point:
/// (d_l v)(m) = i * (M + 2*pi*m)_l * v(m).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> gradient_coefficients(
    const Eigen::VectorXcd& v, const PlaneWaveBasis& basis);

struct ResolventReport {
  AMatrices A;
  AMatrices A_vertex;  // contribution of the two non-cluster vertex states only
  NormalFormCoefficients coefficients;  // source "resolvent"
  StructureDefects defects;
  Eigen::VectorXcd phi1;  // +i-sector cluster state, phase-fixed
  Eigen::VectorXcd phi2;  // = pc_conjugate(phi1)
};

/// Spectral resolvent sums over all non-cluster eigenpairs of the truncated
/// H(M):
///   a^{j1,j2}_{l,m} = sum_b conj(<Phi_b, d_l Phi_j1>) <Phi_b, d_m Phi_j2>
///                     / (mu_b - mu_S),
/// then alpha = 4*a^{11}_{11}, beta = 4*a^{12}_{12}, gamma = 4*a^{12}_{11}.
/// Aborts when the cluster at mu_S does not have multiplicity exactly 2.
ResolventReport resolvent_coefficients(const FourierPotential& V, double eps,
                                       const PlaneWaveBasis& basis, int num_bands);

struct StencilSample {
  Vec2 kappa;
  double mu_minus = 0.0;
  double mu_plus = 0.0;  // the two eigenvalues of H(M + kappa) nearest mu_S
};

/// 16 directions x 4 geometrically spaced radii in [kappa_max/8, kappa_max].
std::vector<StencilSample> sample_stencil(const FourierPotential& V, double eps,
                                          const PlaneWaveBasis& basis, double mu_S,
                                          double kappa_max = 1e-2, int threads = 1);

struct FitResult {
  NormalFormCoefficients coefficients;  // source "fit"; beta, gamma nonneg reals
  double re_gamma_beta_conj = 0.0;      // fitted Re(gamma * conj(beta))
  double residual = 0.0;                // combined relative fit residual
};

/// Least-squares fit of
///   (mu_+ + mu_-)/2 - mu_S = (1 - alpha)|kappa|^2,
///   ((mu_+ - mu_-)/2)^2 = g1 (k1^2-k2^2)^2 + g2 (k1 k2)^2 + g3 (k1^2-k2^2)(k1 k2)
/// with g1 = |gamma|^2, g2 = 4|beta|^2, g3 = 4 Re(gamma conj(beta)). Only the
/// magnitudes are identifiable from dispersion data. Rejects fits with
/// combined relative residual above 1e-2.
FitResult fit_normal_form(const std::vector<StencilSample>& samples, double mu_S);

struct SymmetryCheckEntry {
  Vec2 kappa;
  double rotation_defect = 0.0;    // pair at M+kappa vs M+R kappa
  double reflection_defect = 0.0;  // pair at M+kappa vs M+rho kappa
};

struct SymmetryCheckReport {
  std::vector<SymmetryCheckEntry> entries;
  double max_rotation_defect = 0.0;
  double max_reflection_defect = 0.0;
};

/// Compares the sorted cluster pair {mu_-, mu_+} at M+kappa against the pair
/// at M+R kappa (rotation) and M+rho kappa (reflection, (k1,k2)->(k2,k1)).
SymmetryCheckReport symmetry_check_near_M(const FourierPotential& V, double eps,
                                          const std::vector<Vec2>& kappa_list,
                                          const PlaneWaveBasis& basis, double mu_S);

struct EffectiveMassTensor {
  // Y[p][q](r, s) = delta_pq delta_rs - 4 a^{p,q}_{r,s}, indices 0-based.
  Eigen::Matrix2cd Y[2][2];
};

EffectiveMassTensor effective_mass_tensor(const AMatrices& A);

/// The two eigenvalues of the ascending list nearest mu_S, as (lower, upper).
std::pair<double, double> pair_nearest(const Eigen::VectorXd& values, double mu_S);

}  // namespace bandlab

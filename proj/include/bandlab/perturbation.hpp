#pragma once

#include <Eigen/Dense>
#include <string>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/potential.hpp"

namespace bandlab {

/// First-order eigenvalue predictions for the vertex cluster at the M point.
struct FirstOrderPrediction {
  double mu_S = 0.0;       // the doubly degenerate {+i, -i} pair
  double mu_plus1 = 0.0;
  double mu_minus1 = 0.0;
  double epsilon = 0.0;
  bool nondegenerate = false;  // V11 != +-V01
};

/// mu_S = 2*pi^2 + eps*(V00 - V11), mu_{+-1} = 2*pi^2 + eps*(V00 +- 2*V01 + V11),
/// with V00 = V_{(0,0)}, V01 = V_{(0,1)}, V11 = V_{(1,1)}.
FirstOrderPrediction first_order(const FourierPotential& V, double eps);

struct LeadingCoefficients {
  double alpha = 0.0;
  Complex beta;
  Complex gamma;
};

/// Small-eps closed forms:
///   alpha = beta = (32*pi^2/eps) * V11 / (V11^2 - V01^2),
///   gamma = -(32*pi^2/eps) * i * V01 / (V11^2 - V01^2).
/// Rejects V11 = +-V01 (degenerate denominator) and eps = 0.
LeadingCoefficients leading_coefficients(const FourierPotential& V, double eps);

/// Classification of the vertex-cluster eigenvalue ordering by the signs and
/// relative magnitudes of V11 and V01.
struct OrderingCase {
  std::string label;     // "1a", "1b", "2a", "2b", "3a", "3b", or "none"
  std::string ordering;  // e.g. "mu_{+-i} < mu_{+1} < mu_{-1}"; empty for "none"
};

OrderingCase ordering_case(const FourierPotential& V);

/// First-order eigenvalues of the cluster {Phi1, Phi2} under eps*V + eta*W:
/// nu_{+-} = mu_S + eta*diag +- eta*offdiag_mod with diag = <Phi1, W Phi1>
/// and offdiag_mod = |<Phi1, W Phi2>|, both computed by Fourier convolution.
struct DeformationSplitting {
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  double diag = 0.0;
  double offdiag_mod = 0.0;
};

DeformationSplitting deformation_splitting(const Eigen::VectorXcd& phi1,
                                           const Eigen::VectorXcd& phi2,
                                           const FourierPotential& W, double eta,
                                           double mu_S, const PlaneWaveBasis& basis);

/// <u, W v> = sum_{m,n} conj(c_u(m)) * W_{m-n} * c_v(n).
Complex potential_matrix_element(const Eigen::VectorXcd& u, const FourierPotential& W,
                                 const Eigen::VectorXcd& v, const PlaneWaveBasis& basis);

}  // namespace bandlab

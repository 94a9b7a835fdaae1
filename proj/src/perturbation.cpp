#include "bandlab/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace bandlab {

namespace {

double real_coefficient(const FourierPotential& V, DualIndex m) {
  return V.coefficient(m).real();
}

}  // namespace

FirstOrderPrediction first_order(const FourierPotential& V, double eps) {
  const double v00 = real_coefficient(V, {0, 0});
  const double v01 = real_coefficient(V, {0, 1});
  const double v11 = real_coefficient(V, {1, 1});

  FirstOrderPrediction p;
  p.epsilon = eps;
  p.mu_S = 2.0 * pi * pi + eps * (v00 - v11);
  p.mu_plus1 = 2.0 * pi * pi + eps * (v00 + 2.0 * v01 + v11);
  p.mu_minus1 = 2.0 * pi * pi + eps * (v00 - 2.0 * v01 + v11);
  p.nondegenerate = v11 != v01 && v11 != -v01;
  return p;
}

LeadingCoefficients leading_coefficients(const FourierPotential& V, double eps) {
  if (eps == 0.0) throw std::invalid_argument("leading coefficients need eps != 0");
  const double v01 = real_coefficient(V, {0, 1});
  const double v11 = real_coefficient(V, {1, 1});
  const double denom = v11 * v11 - v01 * v01;
  if (denom == 0.0)
    throw std::invalid_argument("degenerate cluster: V11 = +-V01");

  const double scale = 32.0 * pi * pi / eps;
  LeadingCoefficients c;
  c.alpha = scale * v11 / denom;
  c.beta = c.alpha;
  c.gamma = Complex{0.0, -scale * v01 / denom};
  return c;
}

OrderingCase ordering_case(const FourierPotential& V) {
  const double v01 = real_coefficient(V, {0, 1});
  const double v11 = real_coefficient(V, {1, 1});
  const double guard = 1e-12;
  const auto gt = [&](double a, double b) { return a > b + guard; };

  // Rows keyed on the signs of V11, V01 and the relative magnitude |V01| vs |V11|.
  if (gt(v11, 0.0) && gt(0.0, v01) && gt(v11, std::abs(v01)))
    return {"1a", "mu_{+-i} < mu_{+1} < mu_{-1}"};
  if (gt(v01, 0.0) && gt(v11, v01))
    return {"1b", "mu_{+-i} < mu_{-1} < mu_{+1}"};
  if (gt(0.0, v11) && gt(0.0, v01) && gt(std::abs(v01), std::abs(v11)))
    return {"2a", "mu_{+1} < mu_{+-i} < mu_{-1}"};
  if (gt(0.0, v11) && gt(v01, std::abs(v11)))
    return {"2b", "mu_{-1} < mu_{+-i} < mu_{+1}"};
  if (gt(0.0, v11) && gt(0.0, v01) && gt(std::abs(v11), std::abs(v01)))
    return {"3a", "mu_{+1} < mu_{-1} < mu_{+-i}"};
  if (gt(0.0, v11) && gt(v01, 0.0) && gt(std::abs(v11), v01))
    return {"3b", "mu_{-1} < mu_{+1} < mu_{+-i}"};
  return {"none", ""};
}

Complex potential_matrix_element(const Eigen::VectorXcd& u, const FourierPotential& W,
                                 const Eigen::VectorXcd& v,
                                 const PlaneWaveBasis& basis) {
  if (u.size() != basis.dim() || v.size() != basis.dim())
    throw std::invalid_argument("vector does not match basis");
  Complex sum = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    if (u[i] == Complex{}) continue;
    const DualIndex m = basis.index(i);
    for (int j = 0; j < basis.dim(); ++j) {
      if (v[j] == Complex{}) continue;
      const DualIndex n = basis.index(j);
      sum += std::conj(u[i]) * W.coefficient({m.m1 - n.m1, m.m2 - n.m2}) * v[j];
    }
  }
  return sum;
}

DeformationSplitting deformation_splitting(const Eigen::VectorXcd& phi1,
                                           const Eigen::VectorXcd& phi2,
                                           const FourierPotential& W, double eta,
                                           double mu_S, const PlaneWaveBasis& basis) {
  DeformationSplitting out;
  out.diag = potential_matrix_element(phi1, W, phi1, basis).real();
  out.offdiag_mod = std::abs(potential_matrix_element(phi1, W, phi2, basis));
  out.nu_plus = mu_S + eta * out.diag + eta * out.offdiag_mod;
  out.nu_minus = mu_S + eta * out.diag - eta * out.offdiag_mod;
  return out;
}

}  // namespace bandlab

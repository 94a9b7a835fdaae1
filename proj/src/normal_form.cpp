#include "bandlab/normal_form.hpp"

#include <cmath>
#include <stdexcept>

#include "bandlab/sectors.hpp"

namespace bandlab {

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> gradient_coefficients(
    const Eigen::VectorXcd& v, const PlaneWaveBasis& basis) {
  if (v.size() != basis.dim()) throw std::invalid_argument("vector does not match basis");
  Eigen::VectorXcd d1(v.size()), d2(v.size());
  for (int i = 0; i < basis.dim(); ++i) {
    const Vec2 p = momentum_at_M(basis.index(i));
    d1[i] = Complex{0.0, p[0]} * v[i];
    d2[i] = Complex{0.0, p[1]} * v[i];
  }
  return {std::move(d1), std::move(d2)};
}

namespace {

const Eigen::Matrix2d rotation_R = (Eigen::Matrix2d() << 0.0, -1.0, 1.0, 0.0).finished();

double matrix_defect(const Eigen::Matrix2cd& D) { return D.cwiseAbs().maxCoeff(); }

void accumulate(AMatrices& A, const Eigen::MatrixXcd& G1, const Eigen::MatrixXcd& G2,
                const Eigen::VectorXd& inv_gap) {
  // G_j(b, l) = <Phi_b, d_l Phi_j>; a^{j1,j2}_{l,m} = sum_b conj(G_{j1}(b,l))
  // * G_{j2}(b,m) * inv_gap(b).
  const Eigen::MatrixXcd W1 = inv_gap.asDiagonal() * G1;
  const Eigen::MatrixXcd W2 = inv_gap.asDiagonal() * G2;
  A.A11 += G1.adjoint() * W1;
  A.A12 += G1.adjoint() * W2;
  A.A21 += G2.adjoint() * W1;
  A.A22 += G2.adjoint() * W2;
}

}  // namespace

ResolventReport resolvent_coefficients(const FourierPotential& V, double eps,
                                       const PlaneWaveBasis& basis, int num_bands) {
  const OrbitTable table(basis.truncation());

  // Cluster pair: the +i-sector ground state and its conjugate.
  const SectorSpectrum pi_spec = sector_spectrum(V, eps, Sector::plus_i, table, 1);
  const double mu_S = pi_spec.eigenvalues[0];

  ResolventReport out;
  out.phi1 = synthesize_eigenfunction(Sector::plus_i, pi_spec.coefficients.col(0),
                                      table, basis);
  // Fix the overall phase so phi1 is reproducible run to run.
  {
    int imax = 0;
    double amax = 0.0;
    for (int i = 0; i < out.phi1.size(); ++i)
      if (std::abs(out.phi1[i]) > amax * (1.0 + 1e-12)) {
        amax = std::abs(out.phi1[i]);
        imax = i;
      }
    if (amax > 0.0) out.phi1 *= std::conj(out.phi1[imax]) / amax;
  }
  out.phi2 = pc_conjugate(out.phi1);

  const BlochMatrix HM = assemble(V, eps, point_m, basis);
  const EigenSolution sol = eigensolve(HM, num_bands);

  const double tol = default_cluster_tol(mu_S);
  int cluster_size = 0;
  std::vector<bool> in_cluster(num_bands, false);
  for (int b = 0; b < num_bands; ++b)
    if (std::abs(sol.values[b] - mu_S) <= tol) {
      in_cluster[b] = true;
      ++cluster_size;
    }
  if (cluster_size != 2)
    throw std::runtime_error("degenerate cluster at the M point does not have size 2");

  const auto [d1_phi1, d2_phi1] = gradient_coefficients(out.phi1, basis);
  const auto [d1_phi2, d2_phi2] = gradient_coefficients(out.phi2, basis);

  Eigen::MatrixXcd grads1(basis.dim(), 2), grads2(basis.dim(), 2);
  grads1 << d1_phi1, d2_phi1;
  grads2 << d1_phi2, d2_phi2;

  // Split the spectral sum into the non-cluster vertex states (the {+1,-1}
  // remnants of the vertex shell) and everything else, reported separately.
  std::vector<int> vertex_bands, far_bands;
  for (int b = 0; b < num_bands; ++b) {
    if (in_cluster[b]) continue;
    const bool vertex = std::abs(sol.values[b] - 2.0 * pi * pi) <
                        2.0 * pi * pi;  // below the first excited kinetic shell
    (vertex ? vertex_bands : far_bands).push_back(b);
  }

  const auto sum_over = [&](const std::vector<int>& bands) {
    AMatrices A;
    if (bands.empty()) return A;
    const int n = static_cast<int>(bands.size());
    Eigen::MatrixXcd G1(n, 2), G2(n, 2);
    Eigen::VectorXd inv_gap(n);
    for (int i = 0; i < n; ++i) {
      const int b = bands[i];
      G1.row(i) = (sol.vectors.col(b).adjoint() * grads1).row(0);
      G2.row(i) = (sol.vectors.col(b).adjoint() * grads2).row(0);
      inv_gap[i] = 1.0 / (sol.values[b] - mu_S);
    }
    AMatrices out_A;
    accumulate(out_A, G1, G2, inv_gap);
    return out_A;
  };

  out.A_vertex = sum_over(vertex_bands);
  const AMatrices far = sum_over(far_bands);
  out.A.A11 = out.A_vertex.A11 + far.A11;
  out.A.A12 = out.A_vertex.A12 + far.A12;
  out.A.A21 = out.A_vertex.A21 + far.A21;
  out.A.A22 = out.A_vertex.A22 + far.A22;

  out.coefficients.mu_S = mu_S;
  out.coefficients.alpha = 4.0 * out.A.A11(0, 0).real();
  out.coefficients.beta = 4.0 * out.A.A12(0, 1);
  out.coefficients.gamma = 4.0 * out.A.A12(0, 0);
  out.coefficients.source = "resolvent";

  out.defects.hermiticity =
      std::max({matrix_defect(out.A.A11 - out.A.A11.adjoint()),
                matrix_defect(out.A.A21 - out.A.A12.adjoint()),
                std::abs(4.0 * out.A.A11(0, 0).imag())});
  out.defects.rotation = std::max(
      matrix_defect(rotation_R.transpose() * out.A.A11 * rotation_R - out.A.A11),
      matrix_defect(rotation_R.transpose() * out.A.A12 * rotation_R + out.A.A12));
  out.defects.reflection =
      std::abs(out.coefficients.gamma) / (std::abs(out.coefficients.beta) + 1.0);
  return out;
}

std::pair<double, double> pair_nearest(const Eigen::VectorXd& values, double mu_S) {
  if (values.size() < 2) throw std::invalid_argument("need at least two eigenvalues");
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (std::abs(values[i] - mu_S) < std::abs(values[best] - mu_S)) best = i;
  int second = best == 0 ? 1 : 0;
  for (int i = 0; i < values.size(); ++i) {
    if (i == best) continue;
    if (std::abs(values[i] - mu_S) < std::abs(values[second] - mu_S)) second = i;
  }
  const double lo = std::min(values[best], values[second]);
  const double hi = std::max(values[best], values[second]);
  return {lo, hi};
}

std::vector<StencilSample> sample_stencil(const FourierPotential& V, double eps,
                                          const PlaneWaveBasis& basis, double mu_S,
                                          double kappa_max, int threads) {
  if (kappa_max <= 0.0 || kappa_max > 0.05)
    throw std::invalid_argument("stencil radius must lie in (0, 0.05]");

  constexpr int n_dir = 16;
  constexpr int n_rad = 4;
  std::vector<StencilSample> samples(n_dir * n_rad);
  const int num_bands = std::min(basis.dim(), 12);

  parallel_for(n_dir * n_rad, threads, [&](int idx) {
    const int d = idx / n_rad;
    const int r = idx % n_rad;
    const double theta = 2.0 * pi * d / n_dir;
    const double radius = kappa_max * std::pow(0.5, n_rad - 1 - r);
    const Vec2 kappa{radius * std::cos(theta), radius * std::sin(theta)};
    const Eigen::VectorXd mu =
        eigenvalues_only(assemble(V, eps, point_m + kappa, basis), num_bands);
    const auto [lo, hi] = pair_nearest(mu, mu_S);
    samples[idx] = {kappa, lo, hi};
  });
  return samples;
}

FitResult fit_normal_form(const std::vector<StencilSample>& samples, double mu_S) {
  const int n = static_cast<int>(samples.size());
  if (n < 4) throw std::invalid_argument("too few stencil samples");

  // Trace fit: s(kappa) = (1 - alpha)|kappa|^2.
  double num = 0.0, den = 0.0, s_sq = 0.0;
  for (const auto& smp : samples) {
    const double r2 = smp.kappa.squaredNorm();
    const double s = 0.5 * (smp.mu_plus + smp.mu_minus) - mu_S;
    num += s * r2;
    den += r2 * r2;
    s_sq += s * s;
  }
  const double c = num / den;

  // Gap fit: d(kappa)^2 against the three quartic features.
  Eigen::MatrixXd F(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double k1 = samples[i].kappa[0];
    const double k2 = samples[i].kappa[1];
    const double u = k1 * k1 - k2 * k2;
    const double w = k1 * k2;
    F(i, 0) = u * u;
    F(i, 1) = w * w;
    F(i, 2) = u * w;
    const double half_gap = 0.5 * (samples[i].mu_plus - samples[i].mu_minus);
    y[i] = half_gap * half_gap;
  }
  const Eigen::Vector3d g = F.colPivHouseholderQr().solve(y);

  const double s_res_sq = [&] {
    double acc = 0.0;
    for (const auto& smp : samples) {
      const double s = 0.5 * (smp.mu_plus + smp.mu_minus) - mu_S;
      const double r = s - c * smp.kappa.squaredNorm();
      acc += r * r;
    }
    return acc;
  }();
  const double d_res_sq = (F * g - y).squaredNorm();

  FitResult out;
  out.coefficients.mu_S = mu_S;
  out.coefficients.alpha = 1.0 - c;
  out.coefficients.beta = std::sqrt(std::max(g[1], 0.0) / 4.0);
  out.coefficients.gamma = std::sqrt(std::max(g[0], 0.0));
  out.coefficients.source = "fit";
  out.re_gamma_beta_conj = g[2] / 4.0;
  out.residual = std::sqrt((s_res_sq + d_res_sq) / (s_sq + y.squaredNorm()));
  if (out.residual > 1e-2)
    throw std::runtime_error("normal-form fit rejected: stencil residual too large");
  return out;
}

SymmetryCheckReport symmetry_check_near_M(const FourierPotential& V, double eps,
                                          const std::vector<Vec2>& kappa_list,
                                          const PlaneWaveBasis& basis, double mu_S) {
  SymmetryCheckReport report;
  const int num_bands = std::min(basis.dim(), 12);
  const auto pair_at = [&](Vec2 kappa) {
    return pair_nearest(eigenvalues_only(assemble(V, eps, point_m + kappa, basis),
                                         num_bands),
                        mu_S);
  };
  for (const Vec2& kappa : kappa_list) {
    const auto base = pair_at(kappa);
    const auto rot = pair_at({-kappa[1], kappa[0]});
    const auto refl = pair_at({kappa[1], kappa[0]});
    SymmetryCheckEntry e;
    e.kappa = kappa;
    e.rotation_defect = std::max(std::abs(base.first - rot.first),
                                 std::abs(base.second - rot.second));
    e.reflection_defect = std::max(std::abs(base.first - refl.first),
                                   std::abs(base.second - refl.second));
    report.max_rotation_defect = std::max(report.max_rotation_defect, e.rotation_defect);
    report.max_reflection_defect =
        std::max(report.max_reflection_defect, e.reflection_defect);
    report.entries.push_back(e);
  }
  return report;
}

EffectiveMassTensor effective_mass_tensor(const AMatrices& A) {
  EffectiveMassTensor Y;
  const Eigen::Matrix2cd* blocks[2][2] = {{&A.A11, &A.A12}, {&A.A21, &A.A22}};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      Y.Y[p][q] = -4.0 * (*blocks[p][q]);
      if (p == q) Y.Y[p][q] += Eigen::Matrix2cd::Identity();
    }
  return Y;
}

}  // namespace bandlab

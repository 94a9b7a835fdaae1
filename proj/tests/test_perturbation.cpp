#include <doctest.h>

#include <cmath>

#include "bandlab/perturbation.hpp"
#include "bandlab/normal_form.hpp"
#include "bandlab/sectors.hpp"

using namespace bandlab;

namespace {

FourierPotential coeffs_potential(double v01, double v11) {
  std::vector<std::pair<DualIndex, double>> modes;
  if (v01 != 0.0) modes.push_back({{1, 0}, v01});
  if (v11 != 0.0) modes.push_back({{1, 1}, v11});
  return from_cosine_modes(modes);
}

}  // namespace

TEST_CASE("first-order predictions from the coefficient table") {
  const FourierPotential V = from_cosine_modes({{{1, 1}, 1.0}});
  const FirstOrderPrediction p = first_order(V, 0.01);
  CHECK(p.mu_S == doctest::Approx(2.0 * pi * pi - 0.01).epsilon(1e-14));
  CHECK(p.mu_plus1 == doctest::Approx(2.0 * pi * pi + 0.01).epsilon(1e-14));
  CHECK(p.mu_minus1 == doctest::Approx(2.0 * pi * pi + 0.01).epsilon(1e-14));
  CHECK(p.nondegenerate);

  const FirstOrderPrediction free = first_order(V, 0.0);
  CHECK(free.mu_S == doctest::Approx(2.0 * pi * pi));
  CHECK(free.mu_plus1 == free.mu_S);
  CHECK(free.mu_minus1 == free.mu_S);
}

TEST_CASE("degeneracy flag on V11 = +-V01") {
  CHECK_FALSE(first_order(coeffs_potential(0.5, 0.5), 1.0).nondegenerate);
  CHECK_FALSE(first_order(coeffs_potential(0.5, -0.5), 1.0).nondegenerate);
  CHECK(first_order(coeffs_potential(0.2, -0.5), 1.0).nondegenerate);
}

TEST_CASE("sector eigenvalues approach the predictions at rate eps^2") {
  const FourierPotential V = coeffs_potential(0.2, -0.5);
  const OrbitTable table(6);
  double prev_residual = 0.0;
  for (int step = 0; step < 3; ++step) {
    const double eps = 1e-2 / (1 << step);
    const FirstOrderPrediction p = first_order(V, eps);
    const double mu_i =
        sector_spectrum(V, eps, Sector::plus_i, table, 1).eigenvalues[0];
    const double mu_p1 =
        sector_spectrum(V, eps, Sector::plus_one, table, 1).eigenvalues[0];
    const double mu_m1 =
        sector_spectrum(V, eps, Sector::minus_one, table, 1).eigenvalues[0];
    const double residual = std::max({std::abs(mu_i - p.mu_S),
                                      std::abs(mu_p1 - p.mu_plus1),
                                      std::abs(mu_m1 - p.mu_minus1)});
    if (step > 0) {
      const double ratio = prev_residual / residual;
      CHECK(ratio > 3.0);
      CHECK(ratio < 5.0);
    }
    prev_residual = residual;
  }
}

TEST_CASE("leading coefficients: reflection-invariant example") {
  const LeadingCoefficients c = leading_coefficients(coeffs_potential(0.0, -0.5), 0.1);
  CHECK(c.alpha == doctest::Approx(-640.0 * pi * pi).epsilon(1e-13));
  CHECK(c.beta == Complex{c.alpha, 0.0});
  CHECK(std::abs(c.gamma) == 0.0);
}

TEST_CASE("leading coefficients: pure off-diagonal example") {
  const LeadingCoefficients c = leading_coefficients(coeffs_potential(0.2, 0.0), 0.1);
  CHECK(c.alpha == 0.0);
  CHECK(std::abs(c.beta) == 0.0);
  CHECK(c.gamma.real() == 0.0);
  CHECK(c.gamma.imag() == doctest::Approx(1600.0 * pi * pi).epsilon(1e-13));
}

TEST_CASE("leading coefficients reject the degenerate denominator") {
  CHECK_THROWS_AS(leading_coefficients(coeffs_potential(0.5, 0.5), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(leading_coefficients(coeffs_potential(0.2, -0.5), 0.0),
                  std::invalid_argument);
}

TEST_CASE("ordering table rows") {
  CHECK(ordering_case(coeffs_potential(-0.2, 0.5)).label == "1a");
  CHECK(ordering_case(coeffs_potential(0.2, 0.5)).label == "1b");
  CHECK(ordering_case(coeffs_potential(-0.5, -0.2)).label == "2a");
  CHECK(ordering_case(coeffs_potential(0.5, -0.2)).label == "2b");
  CHECK(ordering_case(coeffs_potential(-0.2, -0.5)).label == "3a");
  CHECK(ordering_case(coeffs_potential(0.2, -0.5)).label == "3b");
  CHECK(ordering_case(coeffs_potential(0.5, 0.5)).label == "none");
  CHECK(ordering_case(coeffs_potential(0.0, 0.5)).label == "none");
}

TEST_CASE("ordering predictions match the computed sector spectra") {
  const OrbitTable table(6);
  const double eps = 1e-2;
  const struct {
    double v01, v11;
  } rows[] = {{-0.2, 0.5}, {0.2, 0.5}, {-0.5, -0.2},
              {0.5, -0.2}, {-0.2, -0.5}, {0.2, -0.5}};
  for (const auto& row : rows) {
    const FourierPotential V = coeffs_potential(row.v01, row.v11);
    const double mu_i =
        sector_spectrum(V, eps, Sector::plus_i, table, 1).eigenvalues[0];
    const double mu_p1 =
        sector_spectrum(V, eps, Sector::plus_one, table, 1).eigenvalues[0];
    const double mu_m1 =
        sector_spectrum(V, eps, Sector::minus_one, table, 1).eigenvalues[0];

    const std::string label = ordering_case(V).label;
    std::string computed;
    if (mu_i < mu_p1 && mu_p1 < mu_m1) computed = "mu_{+-i} < mu_{+1} < mu_{-1}";
    else if (mu_i < mu_m1 && mu_m1 < mu_p1) computed = "mu_{+-i} < mu_{-1} < mu_{+1}";
    else if (mu_p1 < mu_i && mu_i < mu_m1) computed = "mu_{+1} < mu_{+-i} < mu_{-1}";
    else if (mu_m1 < mu_i && mu_i < mu_p1) computed = "mu_{-1} < mu_{+-i} < mu_{+1}";
    else if (mu_p1 < mu_m1 && mu_m1 < mu_i) computed = "mu_{+1} < mu_{-1} < mu_{+-i}";
    else if (mu_m1 < mu_p1 && mu_p1 < mu_i) computed = "mu_{-1} < mu_{+1} < mu_{+-i}";
    CHECK(ordering_case(V).ordering == computed);
    CHECK(label != "none");
  }
}

TEST_CASE("matrix element matches a dense independent evaluation") {
  const FourierPotential V = coeffs_potential(0.2, -0.5);
  const int N = 3;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const SectorSpectrum spec = sector_spectrum(V, 1.0, Sector::plus_i, table, 1);
  const Eigen::VectorXcd phi1 =
      synthesize_eigenfunction(Sector::plus_i, spec.coefficients.col(0), table, basis);
  const Eigen::VectorXcd phi2 = pc_conjugate(phi1);

  // W1 = 2 cos(k1 . x): coefficients at (+-1, 0)
  FourierPotential W1(1, "w1");
  W1.set_coefficient({1, 0}, 1.0);
  W1.set_coefficient({-1, 0}, 1.0);

  Eigen::MatrixXcd W_dense(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i)
    for (int j = 0; j < basis.dim(); ++j) {
      const DualIndex m = basis.index(i), n = basis.index(j);
      W_dense(i, j) = W1.coefficient({m.m1 - n.m1, m.m2 - n.m2});
    }
  const Complex dense = (phi1.adjoint() * W_dense * phi2)(0, 0);
  const Complex conv = potential_matrix_element(phi1, W1, phi2, basis);
  CHECK(std::abs(dense - conv) < 1e-12);
}

TEST_CASE("admissible deformations do not split the +-i pair") {
  const FourierPotential V = coeffs_potential(0.2, -0.5);
  const int N = 5;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const SectorSpectrum spec = sector_spectrum(V, 1e-2, Sector::plus_i, table, 1);
  const Eigen::VectorXcd phi1 =
      synthesize_eigenfunction(Sector::plus_i, spec.coefficients.col(0), table, basis);
  const Eigen::VectorXcd phi2 = pc_conjugate(phi1);

  const FourierPotential W = from_cosine_modes({{{1, 0}, 1.0}, {{2, 1}, 0.3}});
  const DeformationSplitting d =
      deformation_splitting(phi1, phi2, W, 1e-3, spec.eigenvalues[0], basis);
  CHECK(d.offdiag_mod <= 1e-9);
  CHECK(d.nu_plus == doctest::Approx(d.nu_minus).epsilon(1e-12));
}

TEST_CASE("splitting prediction matches the direct spectrum as eta -> 0") {
  const FourierPotential V = coeffs_potential(0.2, -0.5);
  const double eps = 1e-2;
  const int N = 5;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const SectorSpectrum spec = sector_spectrum(V, eps, Sector::plus_i, table, 1);
  const double mu_S = spec.eigenvalues[0];
  const Eigen::VectorXcd phi1 =
      synthesize_eigenfunction(Sector::plus_i, spec.coefficients.col(0), table, basis);
  const Eigen::VectorXcd phi2 = pc_conjugate(phi1);

  FourierPotential W0(1, "w0");
  W0.set_coefficient({1, 1}, 1.0);
  W0.set_coefficient({-1, -1}, 1.0);

  const double eta = 1e-3;
  const DeformationSplitting d =
      deformation_splitting(phi1, phi2, W0, eta, mu_S, basis);
  CHECK(d.offdiag_mod > 0.1);  // W0 genuinely couples the pair

  const FourierPotential combined =
      FourierPotential{}.plus_scaled(V, eps).plus_scaled(W0, eta);
  const Eigen::VectorXd mu =
      eigenvalues_only(assemble(combined, 1.0, point_m, basis), 8);
  const auto pair = pair_nearest(mu, mu_S);
  const double gap = pair.second - pair.first;
  CHECK(gap / eta ==
        doctest::Approx(2.0 * d.offdiag_mod).epsilon(0.1));  // within 10%
}

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "bandlab/sectors.hpp"

using namespace bandlab;

namespace {

const FourierPotential test_potential() {
  return from_cosine_modes({{{1, 0}, 0.2}, {{1, 1}, -0.5}});
}

}  // namespace

TEST_CASE("sector labels and conjugation") {
  CHECK(sector_sigma(Sector::plus_one) == Complex{1.0, 0.0});
  CHECK(sector_sigma(Sector::minus_i) == Complex{0.0, -1.0});
  CHECK(conjugate_sector(Sector::plus_i) == Sector::minus_i);
  CHECK(conjugate_sector(Sector::minus_one) == Sector::minus_one);
  for (Sector s : all_sectors) {
    Complex sigma4 = 1.0;
    for (int j = 0; j < 4; ++j) sigma4 *= sector_sigma(s);
    CHECK(std::abs(sigma4 - Complex{1.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("kernel matches its explicit four-term sum") {
  const FourierPotential V = test_potential();
  const DualIndex m{1, -2}, r{0, 1};
  for (Sector s : all_sectors) {
    const Complex sigma = sector_sigma(s);
    Complex expected = 0.0;
    DualIndex rj = r;
    for (int j = 0; j < 4; ++j) {
      Complex w = 1.0;
      for (int p = 0; p < 4 - j; ++p) w *= sigma;
      expected += w * V.coefficient({m.m1 - rj.m1, m.m2 - rj.m2});
      rj = rotate_index_orbit(rj);
    }
    CHECK(std::abs(kernel_K_sigma(V, s, m, r) - expected) < 1e-14);
  }
}

TEST_CASE("sector matrices are Hermitian for admissible potentials") {
  const FourierPotential V = test_potential();
  const OrbitTable table(5);
  for (Sector s : all_sectors) {
    double defect = -1.0;
    const Eigen::MatrixXcd H = sector_matrix(V, 1.0, s, table, &defect);
    CHECK(defect >= 0.0);
    CHECK(defect < 1e-12);
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("free sector spectra each contribute one vertex eigenvalue") {
  const FourierPotential V;
  const OrbitTable table(6);
  for (Sector s : all_sectors) {
    const SectorSpectrum spec = sector_spectrum(V, 0.0, s, table, 2);
    CHECK(std::abs(spec.eigenvalues[0] - 2.0 * pi * pi) < 1e-10);
    CHECK(spec.eigenvalues[1] > 2.0 * pi * pi + 1.0);
  }
}

TEST_CASE("union of sector spectra equals the full M-point spectrum") {
  const FourierPotential V = test_potential();
  const int N = 4;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const double eps = 1.0;

  std::vector<double> pooled;
  for (Sector s : all_sectors) {
    const SectorSpectrum spec =
        sector_spectrum(V, eps, s, table, static_cast<int>((N + 1) * (N + 1)));
    for (int i = 0; i < spec.eigenvalues.size(); ++i)
      pooled.push_back(spec.eigenvalues[i]);
  }
  std::sort(pooled.begin(), pooled.end());

  const Eigen::VectorXd full =
      eigenvalues_only(assemble(V, eps, point_m, basis), basis.dim());
  REQUIRE(static_cast<int>(pooled.size()) == full.size());
  for (int i = 0; i < full.size(); ++i)
    CHECK(std::abs(pooled[i] - full[i]) < 1e-9 * (1.0 + std::abs(full[i])));
}

TEST_CASE("conjugate sectors have identical spectra") {
  const FourierPotential V = test_potential();
  const OrbitTable table(5);
  const SectorSpectrum plus = sector_spectrum(V, 1.0, Sector::plus_i, table, 6);
  const SectorSpectrum minus = sector_spectrum(V, 1.0, Sector::minus_i, table, 6);
  CHECK((plus.eigenvalues - minus.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("synthesized eigenfunctions are rotation eigenvectors of their sector") {
  const FourierPotential V = test_potential();
  const int N = 4;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  for (Sector s : all_sectors) {
    const SectorSpectrum spec = sector_spectrum(V, 1.0, s, table, 1);
    const Eigen::VectorXcd v =
        synthesize_eigenfunction(s, spec.coefficients.col(0), table, basis);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);

    const Eigen::VectorXcd w = rotate_state(v, basis);
    CHECK((w - sector_sigma(s) * v).norm() < 1e-10);
    CHECK(classify_state(v, basis, 1e-8) == s);

    // it is an eigenvector of the full Bloch matrix at M
    const BlochMatrix H = assemble(V, 1.0, point_m, basis);
    const Eigen::VectorXcd resid = H.entries * v - spec.eigenvalues[0] * v;
    CHECK(resid.norm() < 1e-9);
  }
}

TEST_CASE("rotate_state is the unitary orbit permutation") {
  const PlaneWaveBasis basis(3);
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(basis.dim());
  const Eigen::VectorXcd w = rotate_state(v, basis);
  CHECK(std::abs(w.norm() - v.norm()) < 1e-12);
  // order four
  Eigen::VectorXcd u = v;
  for (int j = 0; j < 4; ++j) u = rotate_state(u, basis);
  CHECK((u - v).norm() < 1e-12);
  // coefficient relocation: w(R m) = v(m)
  const DualIndex m{1, -2};
  CHECK(std::abs(w[basis.position(rotate_index_orbit(m))] - v[basis.position(m)]) <
        1e-15);
}

TEST_CASE("pc conjugation swaps the +i and -i sectors") {
  const FourierPotential V = test_potential();
  const int N = 4;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const SectorSpectrum spec = sector_spectrum(V, 1.0, Sector::plus_i, table, 1);
  const Eigen::VectorXcd phi1 =
      synthesize_eigenfunction(Sector::plus_i, spec.coefficients.col(0), table, basis);
  const Eigen::VectorXcd phi2 = pc_conjugate(phi1);
  CHECK(classify_state(phi2, basis, 1e-8) == Sector::minus_i);
  CHECK(std::abs(phi1.dot(phi2)) < 1e-10);  // distinct sectors are orthogonal

  // phi2 shares the eigenvalue of phi1
  const BlochMatrix H = assemble(V, 1.0, point_m, basis);
  CHECK((H.entries * phi2 - spec.eigenvalues[0] * phi2).norm() < 1e-9);
}

TEST_CASE("mixed states are not classified") {
  const FourierPotential V = test_potential();
  const int N = 4;
  const OrbitTable table(N);
  const PlaneWaveBasis basis(N);
  const SectorSpectrum a = sector_spectrum(V, 1.0, Sector::plus_one, table, 1);
  const SectorSpectrum b = sector_spectrum(V, 1.0, Sector::minus_one, table, 1);
  Eigen::VectorXcd mixed =
      synthesize_eigenfunction(Sector::plus_one, a.coefficients.col(0), table, basis) +
      synthesize_eigenfunction(Sector::minus_one, b.coefficients.col(0), table, basis);
  mixed.normalize();
  CHECK(!classify_state(mixed, basis, 1e-8).has_value());
}

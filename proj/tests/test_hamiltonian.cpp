#include <doctest.h>

#include <cmath>

#include "bandlab/hamiltonian.hpp"

using namespace bandlab;

TEST_CASE("basis layout and round trips") {
  const int N = 5;
  const PlaneWaveBasis basis(N);
  CHECK(basis.dim() == (2 * N + 2) * (2 * N + 2));
  for (int i = 0; i < basis.dim(); ++i)
    CHECK(basis.position(basis.index(i)) == i);
  CHECK(basis.position({N + 1, 0}) == -1);
  CHECK(basis.position({0, -N - 2}) == -1);

  // the box is closed under the orbit rotation
  for (int i = 0; i < basis.dim(); ++i)
    CHECK(basis.position(rotate_index_orbit(basis.index(i))) >= 0);
}

TEST_CASE("free Hamiltonian at M has the four-fold vertex degeneracy") {
  const PlaneWaveBasis basis(6);
  const FourierPotential V;
  const BlochMatrix H = assemble(V, 0.0, point_m, basis);
  const Eigen::VectorXd mu = eigenvalues_only(H, 6);
  for (int b = 0; b < 4; ++b)
    CHECK(std::abs(mu[b] - 2.0 * pi * pi) < 1e-10);
  // the shell index m1^2 + m2^2 + m1 + m2 is always even, so the next shell
  // above the vertex sits at 2 pi^2 + 8 pi^2
  CHECK(std::abs(mu[4] - (2.0 * pi * pi + 8.0 * pi * pi)) < 1e-10);
  CHECK(std::abs(mu[5] - (2.0 * pi * pi + 8.0 * pi * pi)) < 1e-10);
}

TEST_CASE("free dispersion equals folded |k + 2 pi m|^2") {
  const PlaneWaveBasis basis(4);
  const FourierPotential V;
  for (const Vec2 k : {point_gamma, point_x, Vec2{0.3, -1.1}}) {
    const Eigen::VectorXd mu = eigenvalues_only(assemble(V, 0.0, k, basis), 3);
    // lowest band is the minimum of |k + 2 pi m|^2 over the box
    double expected = std::numeric_limits<double>::infinity();
    for (const DualIndex& m : basis.indices())
      expected = std::min(expected, (k + dual_vector(m)).squaredNorm());
    CHECK(mu[0] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("assembled matrix is Hermitian and sorted") {
  const FourierPotential V = from_cosine_modes({{{1, 0}, 0.2}, {{1, 1}, -0.5}});
  const PlaneWaveBasis basis(4);
  const BlochMatrix H = assemble(V, 1.0, {0.4, 0.9}, basis);
  CHECK((H.entries - H.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXd mu = eigenvalues_only(H, 10);
  for (int b = 1; b < mu.size(); ++b) CHECK(mu[b] >= mu[b - 1]);
}

TEST_CASE("eigenvectors orthonormal with deterministic phase") {
  const FourierPotential V = from_cosine_modes({{{1, 1}, -0.5}});
  const PlaneWaveBasis basis(3);
  const EigenSolution sol = eigensolve(assemble(V, 1.0, {0.2, 0.1}, basis), 5);
  const Eigen::MatrixXcd G = sol.vectors.adjoint() * sol.vectors;
  CHECK((G - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  const EigenSolution again = eigensolve(assemble(V, 1.0, {0.2, 0.1}, basis), 5);
  CHECK((sol.vectors - again.vectors).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("variational monotonicity: ground state decreases with truncation") {
  const FourierPotential V = from_cosine_modes({{{1, 0}, 1.0}});
  const Vec2 k{0.7, 0.2};
  double prev = std::numeric_limits<double>::infinity();
  for (int N : {2, 3, 4, 5}) {
    const PlaneWaveBasis basis(N);
    const double mu0 = eigenvalues_only(assemble(V, 5.0, k, basis), 1)[0];
    CHECK(mu0 <= prev + 1e-12);
    prev = mu0;
  }
}

TEST_CASE("band structure along the standard path") {
  const FourierPotential V = from_cosine_modes({{{1, 1}, -0.5}});
  const PlaneWaveBasis basis(3);
  const KPath path = standard_path(8);
  const BandStructure bs = band_structure(V, 1.0, path, 4, basis);
  CHECK(bs.k_samples.size() == path.samples.size());
  CHECK(bs.bands.rows() == static_cast<int>(path.samples.size()));
  CHECK(bs.bands.cols() == 4);
  // continuity: adjacent samples differ by a bounded amount
  for (int i = 1; i < bs.bands.rows(); ++i)
    CHECK((bs.bands.row(i) - bs.bands.row(i - 1)).cwiseAbs().maxCoeff() < 10.0);
}

TEST_CASE("multithreaded scans match single-threaded") {
  const FourierPotential V = from_cosine_modes({{{1, 0}, 0.3}});
  const PlaneWaveBasis basis(3);
  const KPath path = standard_path(6);
  const BandStructure one = band_structure(V, 1.0, path, 3, basis, 1);
  const BandStructure four = band_structure(V, 1.0, path, 3, basis, 4);
  CHECK((one.bands - four.bands).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("surface grid covers the Brillouin zone") {
  const FourierPotential V;
  const PlaneWaveBasis basis(2);
  const BandStructure bs = surfaces_on_grid(V, 0.0, 4, 1, basis);
  CHECK(bs.k_samples.size() == 25);
  CHECK(bs.k_samples.front() == Vec2{-pi, -pi});
  CHECK(bs.k_samples.back() == Vec2{pi, pi});
}

TEST_CASE("eigenvalue clustering") {
  Eigen::VectorXd v(5);
  v << 1.0, 1.0 + 1e-9, 2.0, 2.0 + 1e-9, 5.0;
  const auto clusters = cluster_eigenvalues(v, 1e-7);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0].multiplicity == 2);
  CHECK(clusters[1].multiplicity == 2);
  CHECK(clusters[2].multiplicity == 1);
  CHECK(clusters[0].value == doctest::Approx(1.0 + 5e-10));
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(8, 4,
                               [](int i) {
                                 if (i == 3) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bandlab/lattice.hpp"

namespace bandlab {

using Complex = std::complex<double>;

/// Z^2-periodic potential stored as a dense table of Fourier coefficients V_m
/// over the box |m1|,|m2| <= truncation. Out-of-range coefficients are zero.
class FourierPotential {
 public:
  FourierPotential() : FourierPotential(0, "") {}
  FourierPotential(int truncation, std::string metadata);

  int truncation() const { return truncation_; }
  const std::string& metadata() const { return metadata_; }
  void set_metadata(std::string s) { metadata_ = std::move(s); }

  Complex coefficient(DualIndex m) const {
    if (std::abs(m.m1) > truncation_ || std::abs(m.m2) > truncation_) return {};
    return table_(m.m1 + truncation_, m.m2 + truncation_);
  }
  void set_coefficient(DualIndex m, Complex v);
  void add_coefficient(DualIndex m, Complex v);

  /// Largest coefficient magnitude; used to scale relative tolerances.
  double max_abs() const;

  /// Real part of the truncated Fourier sum at x (units of the unit cell).
  double evaluate(Vec2 x) const;

  /// this + scale * other, on the enclosing truncation box.
  FourierPotential plus_scaled(const FourierPotential& other, double scale) const;

 private:
  int truncation_;
  Eigen::MatrixXcd table_;  // (2N+1) x (2N+1), index offset by N
  std::string metadata_;
};

/// Each mode (m, a) contributes a to every index in the union of the
/// tilde-rotation orbits of m and -m, so the result is admissible by
/// construction. Coinciding indices across distinct list entries accumulate.
FourierPotential from_cosine_modes(
    const std::vector<std::pair<DualIndex, double>>& modes);

/// Periodized-Gaussian lattice potential via the exact continuous Fourier
/// transform (Poisson summation):
///   V_m = sum_i s_i * V0 * pi*sigma * exp(-sigma*pi^2*|m|^2)
///                        * exp(-2*pi*i*(m1*c_i1 + m2*c_i2)),
/// so s_i = -1 places a well (negative bump) at center c_i.
FourierPotential from_gaussian_lattice(const std::vector<Vec2>& centers,
                                       const std::vector<int>& signs, double depth,
                                       double sigma, int truncation);

/// Coefficients from a uniform n x n sample grid over [0,1)^2 (value at
/// (i/n, j/n) in grid(i, j)), restricted to |m1|,|m2| <= truncation.
/// Requires n >= 2*truncation + 2.
FourierPotential from_samples(const Eigen::MatrixXd& grid, int truncation);

/// Samples of sum_i s_i * f(|x - x_i|) with the C^1 bump
/// f(d) = (1 + cos(pi*d/r))/2 for d < r, on an n x n grid over [0,1)^2.
/// Distances are taken to the nearest periodic image.
Eigen::MatrixXd sample_radial_bumps(const std::vector<Vec2>& centers,
                                    const std::vector<int>& signs, double radius,
                                    int n);

struct SymmetryReport {
  bool is_real = false;
  bool is_even = false;
  bool is_rotation_invariant = false;
  bool is_reflection_invariant = false;
  double real_violation = 0.0;        // max |V_m - conj(V_{-m})|
  double even_violation = 0.0;        // max |V_m - V_{-m}|
  double rotation_violation = 0.0;    // max |V_m - V_{tilde R m}|
  double reflection_violation = 0.0;  // max |V_{m1,m2} - V_{m2,m1}|

  bool admissible() const { return is_real && is_even && is_rotation_invariant; }
};

SymmetryReport validate_admissible(const FourierPotential& V, double tol = 1e-8);

}  // namespace bandlab

#include "bandlab/potential.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace bandlab {

FourierPotential::FourierPotential(int truncation, std::string metadata)
    : truncation_(truncation),
      table_(Eigen::MatrixXcd::Zero(2 * truncation + 1, 2 * truncation + 1)),
      metadata_(std::move(metadata)) {
  if (truncation < 0) throw std::invalid_argument("negative truncation");
}

void FourierPotential::set_coefficient(DualIndex m, Complex v) {
  if (std::abs(m.m1) > truncation_ || std::abs(m.m2) > truncation_)
    throw std::out_of_range("coefficient index outside truncation box");
  table_(m.m1 + truncation_, m.m2 + truncation_) = v;
}

void FourierPotential::add_coefficient(DualIndex m, Complex v) {
  if (std::abs(m.m1) > truncation_ || std::abs(m.m2) > truncation_)
    throw std::out_of_range("coefficient index outside truncation box");
  table_(m.m1 + truncation_, m.m2 + truncation_) += v;
}

double FourierPotential::max_abs() const { return table_.cwiseAbs().maxCoeff(); }

double FourierPotential::evaluate(Vec2 x) const {
  Complex sum = 0.0;
  for (int m1 = -truncation_; m1 <= truncation_; ++m1)
    for (int m2 = -truncation_; m2 <= truncation_; ++m2) {
      const double phase = 2.0 * pi * (m1 * x[0] + m2 * x[1]);
      sum += table_(m1 + truncation_, m2 + truncation_) *
             Complex{std::cos(phase), std::sin(phase)};
    }
  return sum.real();
}

FourierPotential FourierPotential::plus_scaled(const FourierPotential& other,
                                               double scale) const {
  const int n = std::max(truncation_, other.truncation_);
  FourierPotential out(n, metadata_);
  for (int m1 = -n; m1 <= n; ++m1)
    for (int m2 = -n; m2 <= n; ++m2) {
      const DualIndex m{m1, m2};
      const Complex v = coefficient(m) + scale * other.coefficient(m);
      if (v != Complex{}) out.set_coefficient(m, v);
    }
  return out;
}

FourierPotential from_cosine_modes(
    const std::vector<std::pair<DualIndex, double>>& modes) {
  int n = 0;
  for (const auto& [m, a] : modes)
    n = std::max({n, std::abs(m.m1), std::abs(m.m2)});

  FourierPotential V(n, "cosine-modes");
  for (const auto& [m, a] : modes) {
    std::set<DualIndex> orbit;
    for (DualIndex q : {m, DualIndex{-m.m1, -m.m2}}) {
      for (int j = 0; j < 4; ++j) {
        orbit.insert(q);
        q = rotate_index_tilde(q);
      }
    }
    for (const DualIndex& q : orbit) V.add_coefficient(q, a);
  }
  return V;
}

FourierPotential from_gaussian_lattice(const std::vector<Vec2>& centers,
                                       const std::vector<int>& signs, double depth,
                                       double sigma, int truncation) {
  if (centers.size() != signs.size())
    throw std::invalid_argument("centers and signs must have equal length");
  if (sigma <= 0.0) throw std::invalid_argument("gaussian width must be positive");
  if (depth <= 0.0) throw std::invalid_argument("gaussian depth must be positive");

  FourierPotential V(truncation, "gaussian-lattice");
  for (int m1 = -truncation; m1 <= truncation; ++m1)
    for (int m2 = -truncation; m2 <= truncation; ++m2) {
      const double radial =
          depth * pi * sigma *
          std::exp(-sigma * pi * pi * (double(m1) * m1 + double(m2) * m2));
      Complex sum = 0.0;
      for (std::size_t i = 0; i < centers.size(); ++i) {
        const double phase = -2.0 * pi * (m1 * centers[i][0] + m2 * centers[i][1]);
        sum += double(signs[i]) * Complex{std::cos(phase), std::sin(phase)};
      }
      Complex v = radial * sum;
      if (std::abs(v.imag()) < 1e-12) v.imag(0.0);
      if (v != Complex{}) V.set_coefficient({m1, m2}, v);
    }
  return V;
}

FourierPotential from_samples(const Eigen::MatrixXd& grid, int truncation) {
  const int n = static_cast<int>(grid.rows());
  if (grid.cols() != n) throw std::invalid_argument("sample grid must be square");
  if (n < 2 * truncation + 2)
    throw std::invalid_argument("sample grid too coarse for requested truncation");

  // Partial DFT, separable: first over x1 for each needed m1, then over x2.
  const int nm = 2 * truncation + 1;
  Eigen::MatrixXcd partial(nm, n);  // (m1, j) -> sum_i V(i,j) e^{-2 pi i m1 i/n}
  for (int a = 0; a < nm; ++a) {
    const int m1 = a - truncation;
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double phase = -2.0 * pi * m1 * i / double(n);
        s += grid(i, j) * Complex{std::cos(phase), std::sin(phase)};
      }
      partial(a, j) = s;
    }
  }

  FourierPotential V(truncation, "samples");
  for (int a = 0; a < nm; ++a)
    for (int b = 0; b < nm; ++b) {
      const int m2 = b - truncation;
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double phase = -2.0 * pi * m2 * j / double(n);
        s += partial(a, j) * Complex{std::cos(phase), std::sin(phase)};
      }
      V.set_coefficient({a - truncation, m2}, s / double(n) / double(n));
    }
  return V;
}

Eigen::MatrixXd sample_radial_bumps(const std::vector<Vec2>& centers,
                                    const std::vector<int>& signs, double radius,
                                    int n) {
  if (centers.size() != signs.size())
    throw std::invalid_argument("centers and signs must have equal length");
  if (radius <= 0.0 || radius > 0.5)
    throw std::invalid_argument("bump radius must lie in (0, 1/2]");

  Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec2 x{double(i) / n, double(j) / n};
      double v = 0.0;
      for (std::size_t c = 0; c < centers.size(); ++c) {
        // displacement to the nearest periodic image
        double d1 = x[0] - centers[c][0];
        double d2 = x[1] - centers[c][1];
        d1 -= std::round(d1);
        d2 -= std::round(d2);
        const double d = std::hypot(d1, d2);
        if (d < radius) v += signs[c] * 0.5 * (1.0 + std::cos(pi * d / radius));
      }
      grid(i, j) = v;
    }
  return grid;
}

SymmetryReport validate_admissible(const FourierPotential& V, double tol) {
  SymmetryReport rep;
  const int n = V.truncation();
  for (int m1 = -n; m1 <= n; ++m1)
    for (int m2 = -n; m2 <= n; ++m2) {
      const DualIndex m{m1, m2};
      const Complex v = V.coefficient(m);
      rep.real_violation = std::max(
          rep.real_violation, std::abs(v - std::conj(V.coefficient({-m1, -m2}))));
      rep.even_violation =
          std::max(rep.even_violation, std::abs(v - V.coefficient({-m1, -m2})));
      rep.rotation_violation = std::max(
          rep.rotation_violation, std::abs(v - V.coefficient(rotate_index_tilde(m))));
      rep.reflection_violation =
          std::max(rep.reflection_violation, std::abs(v - V.coefficient({m2, m1})));
    }
  rep.is_real = rep.real_violation <= tol;
  rep.is_even = rep.even_violation <= tol;
  rep.is_rotation_invariant = rep.rotation_violation <= tol;
  rep.is_reflection_invariant = rep.reflection_violation <= tol;
  return rep;
}

}  // namespace bandlab

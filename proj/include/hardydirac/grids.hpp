#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <vector>

#include "hardydirac/errors.hpp"
#include "hardydirac/spinor_algebra.hpp"

namespace hardydirac {

enum class WeightKind { ONE, ABS_X, INV_ABS_X, ONE_PLUS_ABS_X, H_HALF };

/// Periodic box [-L, L)^3, N nodes per axis offset by half a spacing, so no
/// node ever sits at x = 0 and 1/|x| stays finite everywhere.
class CartesianGrid {
 public:
  CartesianGrid(double half_width, int n) : half_width_(half_width), n_(n) {
    if (half_width <= 0.0) throw InvalidArgument("CartesianGrid: half-width must be positive");
    if (n < 4 || n % 2 != 0) throw InvalidArgument("CartesianGrid: N must be even and >= 4");
  }

  double half_width() const { return half_width_; }
  int n() const { return n_; }
  std::size_t node_count() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double cell_volume() const { return std::pow(spacing(), 3); }

  double coord(int i) const { return -half_width_ + (i + 0.5) * spacing(); }

  Vec3 node(int ix, int iy, int iz) const { return Vec3(coord(ix), coord(iy), coord(iz)); }

  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
  }

  /// Angular wavenumber of FFT bin m along one axis (Fourier modes e^{i k x}).
  double wavenumber(int m) const {
    const int k = (m < n_ / 2) ? m : m - n_;
    return M_PI * k / half_width_;
  }

  /// Smallest |x| over nodes ((h/2)*sqrt(3), at the 8 cells around the origin).
  double min_radius() const { return 0.5 * spacing() * std::sqrt(3.0); }

  bool operator==(const CartesianGrid& o) const {
    return half_width_ == o.half_width_ && n_ == o.n_;
  }

  /// Node radii, cached.
  const std::vector<double>& radii() const {
    if (!radii_) {
      auto r = std::make_shared<std::vector<double>>(node_count());
      for (int ix = 0; ix < n_; ++ix)
        for (int iy = 0; iy < n_; ++iy)
          for (int iz = 0; iz < n_; ++iz) (*r)[index(ix, iy, iz)] = node(ix, iy, iz).norm();
      radii_ = std::move(r);
    }
    return *radii_;
  }


 private:
  double half_width_;
  int n_;
  mutable std::shared_ptr<const std::vector<double>> radii_;
};

/// Log-uniform radial grid r_i = r_min e^{i h}; resolves the 1/|x| weight down
/// to r_min. Quadrature is the trapezoid rule in t = log r.
class RadialGrid {
 public:
  RadialGrid(double r_min, double r_max, int m) : r_min_(r_min), r_max_(r_max), m_(m) {
    if (!(r_min > 0.0 && r_min < r_max)) throw InvalidArgument("RadialGrid: need 0 < r_min < r_max");
    if (m < 8) throw InvalidArgument("RadialGrid: too few nodes");
  }

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int size() const { return m_; }
  double log_step() const { return std::log(r_max_ / r_min_) / (m_ - 1); }
  double r(int i) const { return r_min_ * std::exp(i * log_step()); }

  bool operator==(const RadialGrid& o) const {
    return r_min_ == o.r_min_ && r_max_ == o.r_max_ && m_ == o.m_;
  }

  Eigen::ArrayXd nodes() const {
    Eigen::ArrayXd out(m_);
    for (int i = 0; i < m_; ++i) out[i] = r(i);
    return out;
  }

  /// Weights w_i with Integral f(r) dr ~= Sum w_i f(r_i) (trapezoid in log r).
  Eigen::ArrayXd dr_weights() const {
    const double h = log_step();
    Eigen::ArrayXd w = nodes() * h;
    w[0] *= 0.5;
    w[m_ - 1] *= 0.5;
    return w;
  }

  /// Weights for the L2 measure r^2 dr.
  Eigen::ArrayXd volume_weights() const { return dr_weights() * nodes().square(); }

  RadialGrid refined() const { return RadialGrid(r_min_, r_max_, 2 * m_ - 1); }

 private:
  double r_min_;
  double r_max_;
  int m_;
};

inline CartesianGrid default_cartesian_grid(double eps, double m, int n = 64) {
  const double scale = std::max(1.0, std::sqrt(eps * eps + m * m));
  return CartesianGrid(16.0 / scale, n);
}

inline RadialGrid default_radial_grid() { return RadialGrid(1e-4, 40.0, 2048); }

}  // namespace hardydirac

#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hardydirac/grids.hpp"
#include "hardydirac/rng.hpp"

namespace hardydirac {

/// A C^NC-valued function sampled on a CartesianGrid, one column per node.
/// NC = 1 scalar, 2 Pauli spinor, 4 Dirac spinor (upper pair phi, lower pair chi).
template <int NC>
struct CartesianField {
  using Values = Eigen::Matrix<Complex, NC, Eigen::Dynamic>;

  CartesianGrid grid;
  Values values;

  explicit CartesianField(const CartesianGrid& g)
      : grid(g), values(Values::Zero(NC, g.node_count())) {}

  static CartesianField zero(const CartesianGrid& g) { return CartesianField(g); }

  template <typename F>  // F: Vec3 -> Eigen::Vector<Complex, NC>
  static CartesianField from_function(const CartesianGrid& g, F&& f) {
    CartesianField out(g);
    const int n = g.n();
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz) out.values.col(g.index(ix, iy, iz)) = f(g.node(ix, iy, iz));
    return out;
  }

  std::size_t node_count() const { return grid.node_count(); }

  bool finite() const { return values.allFinite(); }

  CartesianField& operator+=(const CartesianField& o) {
    values += o.values;
    return *this;
  }
  CartesianField& operator-=(const CartesianField& o) {
    values -= o.values;
    return *this;
  }
  CartesianField& operator*=(Complex c) {
    values *= c;
    return *this;
  }
  friend CartesianField operator+(CartesianField a, const CartesianField& b) { return a += b; }
  friend CartesianField operator-(CartesianField a, const CartesianField& b) { return a -= b; }
  friend CartesianField operator*(Complex c, CartesianField a) { return a *= c; }
};

using ScalarField = CartesianField<1>;
using PauliField = CartesianField<2>;
using SpinorField = CartesianField<4>;

/// <a, b> = Integral a . conj(b) dx, linear in the first argument.
template <int NC>
Complex inner(const CartesianField<NC>& a, const CartesianField<NC>& b) {
  return (a.values.array() * b.values.array().conjugate()).sum() * a.grid.cell_volume();
}

template <int NC>
double norm_sq(const CartesianField<NC>& f) {
  return f.values.squaredNorm() * f.grid.cell_volume();
}

template <int NC>
double norm(const CartesianField<NC>& f) {
  return std::sqrt(norm_sq(f));
}

/// Physical-space weighted norms; the spectral H_HALF weight lives in
/// spectral.hpp. The half-offset midpoint rule is O(h^4) for smooth decaying
/// integrands (the h^2 term integrates to zero); fields with |psi(0)| != 0 see
/// an origin-cell error of a few percent for INV_ABS_X, which is why the
/// radial-channel path is preferred near r = 0.
template <int NC>
double weighted_norm_sq_physical(const CartesianField<NC>& f, WeightKind w) {
  const auto& r = f.grid.radii();
  const double vol = f.grid.cell_volume();
  double acc = 0.0;
  switch (w) {
    case WeightKind::ONE:
      return norm_sq(f);
    case WeightKind::ABS_X:
      for (std::size_t i = 0; i < f.node_count(); ++i) acc += r[i] * f.values.col(i).squaredNorm();
      return acc * vol;
    case WeightKind::INV_ABS_X:
      for (std::size_t i = 0; i < f.node_count(); ++i)
        acc += f.values.col(i).squaredNorm() / r[i];
      return acc * vol;
    case WeightKind::ONE_PLUS_ABS_X:
      for (std::size_t i = 0; i < f.node_count(); ++i)
        acc += (1.0 + r[i]) * f.values.col(i).squaredNorm();
      return acc * vol;
    case WeightKind::H_HALF:
      throw UnsupportedCombination("H_HALF is computed spectrally; use weighted_norm_sq");
  }
  throw InvalidArgument("unknown weight kind");
}

/// Upper (phi) and lower (chi) Pauli pairs of a Dirac spinor field.
inline PauliField upper(const SpinorField& psi) {
  PauliField out(psi.grid);
  out.values = psi.values.topRows<2>();
  return out;
}

inline PauliField lower(const SpinorField& psi) {
  PauliField out(psi.grid);
  out.values = psi.values.bottomRows<2>();
  return out;
}

inline SpinorField assemble(const PauliField& phi, const PauliField& chi) {
  if (!(phi.grid == chi.grid)) throw InvalidArgument("assemble: mismatched grids");
  SpinorField out(phi.grid);
  out.values.topRows<2>() = phi.values;
  out.values.bottomRows<2>() = chi.values;
  return out;
}

/// Pointwise matrix action M(x) psi(x).
template <int NC, typename F>  // F: (Vec3, index) -> Eigen::Matrix<Complex, NC, NC>
CartesianField<NC> apply_pointwise_matrix(const CartesianField<NC>& f, F&& m) {
  CartesianField<NC> out(f.grid);
  const int n = f.grid.n();
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        const std::size_t id = f.grid.index(ix, iy, iz);
        out.values.col(id) = m(f.grid.node(ix, iy, iz), id) * f.values.col(id);
      }
  return out;
}

}  // namespace hardydirac

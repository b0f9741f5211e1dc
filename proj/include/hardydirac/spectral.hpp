#pragma once

#include <unsupported/Eigen/FFT>

#include <array>

#include "hardydirac/field.hpp"

namespace hardydirac {

namespace detail {

inline Eigen::FFT<double>& fft_engine() {
  static thread_local Eigen::FFT<double> engine;
  return engine;
}

// In-place 3D DFT along all axes, one component (row) at a time. Forward is
// unnormalized; inverse carries the full 1/N^3.
template <int NC>
void dft3(Eigen::Matrix<Complex, NC, Eigen::Dynamic>& v, int n, bool inverse) {
  auto& engine = fft_engine();
  Eigen::VectorXcd line(n), out(n);
  const auto idx = [n](int a, int b, int c) {
    return (static_cast<std::size_t>(a) * n + b) * n + c;
  };
  for (int comp = 0; comp < NC; ++comp) {
    // axis 2 (z): contiguous columns
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy) {
        const std::size_t base = idx(ix, iy, 0);
        for (int i = 0; i < n; ++i) line[i] = v(comp, base + i);
        if (inverse)
          engine.inv(out, line);
        else
          engine.fwd(out, line);
        for (int i = 0; i < n; ++i) v(comp, base + i) = out[i];
      }
    // axis 1 (y)
    for (int ix = 0; ix < n; ++ix)
      for (int iz = 0; iz < n; ++iz) {
        for (int i = 0; i < n; ++i) line[i] = v(comp, idx(ix, i, iz));
        if (inverse)
          engine.inv(out, line);
        else
          engine.fwd(out, line);
        for (int i = 0; i < n; ++i) v(comp, idx(ix, i, iz)) = out[i];
      }
    // axis 0 (x)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        for (int i = 0; i < n; ++i) line[i] = v(comp, idx(i, iy, iz));
        if (inverse)
          engine.inv(out, line);
        else
          engine.fwd(out, line);
        for (int i = 0; i < n; ++i) v(comp, idx(i, iy, iz)) = out[i];
      }
  }
}

}  // namespace detail

template <int NC>
CartesianField<NC> fft_forward(CartesianField<NC> f) {
  detail::dft3<NC>(f.values, f.grid.n(), false);
  return f;
}

template <int NC>
CartesianField<NC> fft_inverse(CartesianField<NC> f) {
  detail::dft3<NC>(f.values, f.grid.n(), true);
  return f;
}

/// Applies a mode-wise matrix multiplier M(xi) in Fourier space.
template <int NC, typename F>  // F: (Vec3 xi) -> Eigen::Matrix<Complex, NC, NC>
CartesianField<NC> apply_multiplier(const CartesianField<NC>& f, F&& symbol) {
  CartesianField<NC> hat = fft_forward(f);
  const int n = f.grid.n();
  for (int mx = 0; mx < n; ++mx) {
    const double kx = f.grid.wavenumber(mx);
    for (int my = 0; my < n; ++my) {
      const double ky = f.grid.wavenumber(my);
      for (int mz = 0; mz < n; ++mz) {
        const std::size_t id = f.grid.index(mx, my, mz);
        hat.values.col(id) = symbol(Vec3(kx, ky, f.grid.wavenumber(mz))) * hat.values.col(id).eval();
      }
    }
  }
  return fft_inverse(std::move(hat));
}

/// Spectral gradient: three fields (d/dx1, d/dx2, d/dx3). The Nyquist mode is
/// zeroed, as usual for odd derivatives on an even grid.
template <int NC>
std::array<CartesianField<NC>, 3> gradient(const CartesianField<NC>& f) {
  CartesianField<NC> hat = fft_forward(f);
  const int n = f.grid.n();
  std::array<CartesianField<NC>, 3> out{CartesianField<NC>(f.grid), CartesianField<NC>(f.grid),
                                        CartesianField<NC>(f.grid)};
  const auto deriv_k = [&](int m) {
    return (m == n / 2) ? 0.0 : f.grid.wavenumber(m);
  };
  for (int axis = 0; axis < 3; ++axis) {
    CartesianField<NC> dhat = hat;
    for (int mx = 0; mx < n; ++mx)
      for (int my = 0; my < n; ++my)
        for (int mz = 0; mz < n; ++mz) {
          const int m = axis == 0 ? mx : (axis == 1 ? my : mz);
          dhat.values.col(f.grid.index(mx, my, mz)) *= kImag * deriv_k(m);
        }
    out[axis] = fft_inverse(std::move(dhat));
  }
  return out;
}

/// sigma . grad phi for a Pauli field (componentwise spectral gradient
/// contracted with the Pauli matrices).
inline PauliField sigma_grad(const PauliField& phi) {
  auto g = gradient(phi);
  PauliField out(phi.grid);
  out.values = pauli(1) * g[0].values + pauli(2) * g[1].values + pauli(3) * g[2].values;
  return out;
}

/// alpha . grad psi for a Dirac field: off-diagonal sigma.grad on the pairs.
inline SpinorField alpha_grad(const SpinorField& psi) {
  const PauliField dchi = sigma_grad(lower(psi));
  const PauliField dphi = sigma_grad(upper(psi));
  return assemble(dchi, dphi);
}

/// d/dr = (x/|x|) . grad, evaluated from the spectral gradient.
template <int NC>
CartesianField<NC> radial_derivative(const CartesianField<NC>& f) {
  auto g = gradient(f);
  CartesianField<NC> out(f.grid);
  const int n = f.grid.n();
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        const std::size_t id = f.grid.index(ix, iy, iz);
        const Vec3 xhat = f.grid.node(ix, iy, iz).normalized();
        out.values.col(id) = xhat[0] * g[0].values.col(id) + xhat[1] * g[1].values.col(id) +
                             xhat[2] * g[2].values.col(id);
      }
  return out;
}

/// (sigma . L) phi with L = -i x ^ grad (the convention fixed by the identity
/// sigma.grad = (sigma.x_hat)(d_r - sigma.L / r)).
inline PauliField apply_spin_orbit(const PauliField& phi) {
  auto g = gradient(phi);
  PauliField out(phi.grid);
  const int n = phi.grid.n();
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        const std::size_t id = phi.grid.index(ix, iy, iz);
        const Vec3 x = phi.grid.node(ix, iy, iz);
        const Vec2c l1 = -kImag * (x[1] * g[2].values.col(id) - x[2] * g[1].values.col(id));
        const Vec2c l2 = -kImag * (x[2] * g[0].values.col(id) - x[0] * g[2].values.col(id));
        const Vec2c l3 = -kImag * (x[0] * g[1].values.col(id) - x[1] * g[0].values.col(id));
        out.values.col(id) = pauli(1) * l1 + pauli(2) * l2 + pauli(3) * l3;
      }
  return out;
}

/// H0 psi = (-i alpha.grad + m beta) psi, as the exact Fourier multiplier
/// alpha.k + m beta. This spectral path is the convention authority.
inline SpinorField apply_free_dirac(const SpinorField& psi, double mass) {
  return apply_multiplier(psi, [mass](const Vec3& k) -> Mat4 {
    return contract_alpha(k) + mass * dirac_beta();
  });
}

/// Parameters of the free resolvent (i alpha.grad - m beta + sign * i eps)^{-1}.
/// sign = -1 is the branch used when solving (H + i) psi = f.
struct FreeDiracParams {
  double mass = 0.0;
  double eps = 1.0;
  int sign = -1;

  FreeDiracParams(double m, double e, int s) : mass(m), eps(e), sign(s) {
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be finite and >= 0");
    if (eps < 0.0) throw InvalidArgument("eps must be >= 0");
    if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  }
};

/// Free resolvent as the inverted 4x4 symbol
///   (-alpha.xi - m beta + s i eps)^{-1} = (-alpha.xi - m beta - s i eps) / (|xi|^2 + m^2 + eps^2).
/// eps = 0 is admitted for m > 0; for m = eps = 0 the xi = 0 mode must vanish.
inline SpinorField apply_free_resolvent(const SpinorField& f, const FreeDiracParams& p) {
  SpinorField hat = fft_forward(f);
  const int n = f.grid.n();
  const Complex shift = Complex(0.0, p.sign * p.eps);
  for (int mx = 0; mx < n; ++mx)
    for (int my = 0; my < n; ++my)
      for (int mz = 0; mz < n; ++mz) {
        const Vec3 k(f.grid.wavenumber(mx), f.grid.wavenumber(my), f.grid.wavenumber(mz));
        const double denom = k.squaredNorm() + p.mass * p.mass + p.eps * p.eps;
        const std::size_t id = f.grid.index(mx, my, mz);
        if (denom == 0.0) {
          const double c = hat.values.col(id).norm() / std::sqrt(double(f.node_count()));
          if (c > 1e-12 * (1.0 + hat.values.norm() / f.node_count()))
            throw InvalidArgument("free resolvent at m = eps = 0 needs a zero-mean field");
          hat.values.col(id).setZero();
          continue;
        }
        const Mat4 num = -contract_alpha(k) - p.mass * dirac_beta() - shift * Mat4::Identity();
        hat.values.col(id) = (num / denom) * hat.values.col(id).eval();
      }
  return fft_inverse(std::move(hat));
}

/// (i alpha.grad - m beta + s i eps) psi, the operator the resolvent inverts.
inline SpinorField apply_resolvent_inverse_op(const SpinorField& psi, const FreeDiracParams& p) {
  const Complex shift = Complex(0.0, p.sign * p.eps);
  return apply_multiplier(psi, [&](const Vec3& k) -> Mat4 {
    return -contract_alpha(k) - p.mass * dirac_beta() + shift * Mat4::Identity();
  });
}

/// Sobolev H^{1/2} norm squared, computed spectrally with weight (1+|xi|^2)^{1/2}.
template <int NC>
double h_half_norm_sq(const CartesianField<NC>& f) {
  CartesianField<NC> hat = fft_forward(f);
  const int n = f.grid.n();
  const double scale = f.grid.cell_volume() / f.node_count();
  double acc = 0.0;
  for (int mx = 0; mx < n; ++mx)
    for (int my = 0; my < n; ++my)
      for (int mz = 0; mz < n; ++mz) {
        const Vec3 k(f.grid.wavenumber(mx), f.grid.wavenumber(my), f.grid.wavenumber(mz));
        acc += std::sqrt(1.0 + k.squaredNorm()) *
               hat.values.col(f.grid.index(mx, my, mz)).squaredNorm();
      }
  return acc * scale;
}

template <int NC>
double weighted_norm_sq(const CartesianField<NC>& f, WeightKind w) {
  if (w == WeightKind::H_HALF) return h_half_norm_sq(f);
  return weighted_norm_sq_physical(f, w);
}

/// Zeroes all Fourier modes with |k_int|_inf > k_max.
template <int NC>
CartesianField<NC> low_pass(const CartesianField<NC>& f, int k_max) {
  CartesianField<NC> hat = fft_forward(f);
  const int n = f.grid.n();
  for (int mx = 0; mx < n; ++mx)
    for (int my = 0; my < n; ++my)
      for (int mz = 0; mz < n; ++mz) {
        const int kx = mx < n / 2 ? mx : mx - n;
        const int ky = my < n / 2 ? my : my - n;
        const int kz = mz < n / 2 ? mz : mz - n;
        if (std::abs(kx) > k_max || std::abs(ky) > k_max || std::abs(kz) > k_max)
          hat.values.col(f.grid.index(mx, my, mz)).setZero();
      }
  return fft_inverse(std::move(hat));
}

/// Seeded band-limited random field: independent complex Gaussian Fourier
/// amplitudes on |k_int|_inf <= k_max, zero elsewhere, unit L2 norm.
template <int NC>
CartesianField<NC> band_limited_random(const CartesianGrid& g, std::uint64_t seed, int k_max,
                                       bool zero_mean = false) {
  Xoshiro256 rng(seed);
  CartesianField<NC> hat(g);
  const int n = g.n();
  for (int mx = 0; mx < n; ++mx)
    for (int my = 0; my < n; ++my)
      for (int mz = 0; mz < n; ++mz) {
        const int kx = mx < n / 2 ? mx : mx - n;
        const int ky = my < n / 2 ? my : my - n;
        const int kz = mz < n / 2 ? mz : mz - n;
        if (std::abs(kx) > k_max || std::abs(ky) > k_max || std::abs(kz) > k_max) continue;
        if (zero_mean && kx == 0 && ky == 0 && kz == 0) continue;
        for (int c = 0; c < NC; ++c)
          hat.values(c, g.index(mx, my, mz)) = Complex(rng.next_normal(), rng.next_normal());
      }
  CartesianField<NC> out = fft_inverse(std::move(hat));
  const double nrm = norm(out);
  if (nrm > 0.0) out *= Complex(1.0 / nrm, 0.0);
  return out;
}

/// Gaussian packet exp(-|x - x0|^2 / (2 w^2)) times a fixed unit spinor, unit L2 norm.
template <int NC>
CartesianField<NC> gaussian_packet(const CartesianGrid& g, double width, const Vec3& center,
                                   const Eigen::Matrix<Complex, NC, 1>& dir) {
  auto out = CartesianField<NC>::from_function(g, [&](const Vec3& x) {
    return (dir * std::exp(-(x - center).squaredNorm() / (2.0 * width * width))).eval();
  });
  const double nrm = norm(out);
  if (nrm > 0.0) out *= Complex(1.0 / nrm, 0.0);
  return out;
}

}  // namespace hardydirac

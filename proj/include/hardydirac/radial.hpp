#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hardydirac/grids.hpp"
#include "hardydirac/spinor_algebra.hpp"

namespace hardydirac {

using RadialValues = Eigen::ArrayXcd;

/// Partial-wave representation of a Dirac spinor in the kappa sector:
///   psi = f(r) Omega_kappa + i g(r) Omega_{-kappa},
/// with (sigma.L + 1) Omega_kappa = -kappa Omega_kappa and
/// (sigma.x_hat) Omega_kappa = -Omega_{-kappa}.
struct RadialChannel {
  int kappa;
  RadialGrid grid;
  RadialValues f;
  RadialValues g;

  RadialChannel(int k, const RadialGrid& grd)
      : kappa(k), grid(grd), f(RadialValues::Zero(grd.size())), g(RadialValues::Zero(grd.size())) {
    if (k == 0) throw InvalidArgument("RadialChannel: kappa must be nonzero");
  }

  static RadialChannel from_profiles(int k, const RadialGrid& grd,
                                     const std::function<Complex(double)>& fr,
                                     const std::function<Complex(double)>& gr) {
    RadialChannel ch(k, grd);
    for (int i = 0; i < grd.size(); ++i) {
      ch.f[i] = fr(grd.r(i));
      ch.g[i] = gr(grd.r(i));
    }
    return ch;
  }
};

/// Orbital angular momentum of Omega_kappa.
inline int ell_of_kappa(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }

namespace detail {

// Finite-difference weights for d/dt at integer offset set, unit step, solved
// from the Vandermonde moment conditions (Fornberg-style, small orders). The
// weights are post-corrected to annihilate constants exactly.
inline Eigen::VectorXd fd_weights(const Eigen::VectorXi& offsets, double h) {
  const int m = offsets.size();
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs[1] = 1.0;
  for (int row = 0; row < m; ++row)
    for (int col = 0; col < m; ++col) a(row, col) = std::pow(double(offsets[col]), row);
  Eigen::VectorXd w = a.fullPivLu().solve(rhs);
  w.array() -= w.sum() / m;
  return w / h;
}

}  // namespace detail

/// d/dr on the log grid: 7-point (6th order) central stencil in t = log r,
/// one-sided at the edges, then scaled by 1/r.
inline RadialValues radial_derivative(const RadialGrid& grid, const RadialValues& u) {
  const int m = grid.size();
  const int w = 3;
  const double h = grid.log_step();
  static thread_local std::vector<std::pair<double, Eigen::MatrixXd>> cache;
  Eigen::MatrixXd* stencils = nullptr;
  for (auto& [step, s] : cache)
    if (step == h) stencils = &s;
  if (!stencils) {
    // row 0..2w: weights for evaluation point at offset row within a (2w+1)-wide window
    Eigen::MatrixXd s(2 * w + 1, 2 * w + 1);
    for (int at = 0; at <= 2 * w; ++at) {
      Eigen::VectorXi offs(2 * w + 1);
      for (int j = 0; j <= 2 * w; ++j) offs[j] = j - at;
      s.row(at) = detail::fd_weights(offs, h).transpose();
    }
    cache.emplace_back(h, std::move(s));
    stencils = &cache.back().second;
  }
  RadialValues du(m);
  for (int i = 0; i < m; ++i) {
    const int at = std::min(std::max(i, w), m - 1 - w);
    const int row = w + (i - at);
    Complex acc = 0.0;
    for (int j = 0; j <= 2 * w; ++j) acc += (*stencils)(row, j) * u[at - w + j];
    du[i] = acc / grid.r(i);
  }
  return du;
}

/// Integral of a sampled density against dr (trapezoid in log r with the
/// Euler-Maclaurin endpoint-derivative correction; ~h^4).
inline double integrate_dr(const RadialGrid& grid, const Eigen::ArrayXd& density) {
  const Eigen::ArrayXd w = grid.dr_weights();
  double acc = (w * density).sum();
  const double h = grid.log_step();
  // f'(t) at the ends, f(t) = r * density(r)
  const int m = grid.size();
  const Eigen::ArrayXd ft = density * grid.nodes();
  auto end_deriv = [&](bool left) {
    double d = 0.0;
    static const double c[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4};
    for (int j = 0; j < 5; ++j) d += c[j] * (left ? ft[j] : ft[m - 1 - j]);
    return (left ? d : -d) / h;
  };
  acc -= h * h / 12.0 * (end_deriv(false) - end_deriv(true));
  return acc;
}

inline double channel_weight_value(WeightKind w, double r) {
  switch (w) {
    case WeightKind::ONE: return 1.0;
    case WeightKind::ABS_X: return r;
    case WeightKind::INV_ABS_X: return 1.0 / r;
    case WeightKind::ONE_PLUS_ABS_X: return 1.0 + r;
    case WeightKind::H_HALF:
      throw UnsupportedCombination("H_HALF weight needs a Cartesian grid (Fourier weight)");
  }
  throw InvalidArgument("unknown weight kind");
}

/// Estimate of the integral below r_min from a two-point power-law fit of a
/// non-negative density; zero when the density vanishes or the fit diverges.
inline double head_correction(const RadialGrid& grid, const Eigen::ArrayXd& density) {
  const double d0 = density[0], d1 = density[1];
  if (!(d0 > 0.0) || !(d1 > 0.0)) return 0.0;
  double q = std::log(d1 / d0) / grid.log_step();
  q = std::min(q, 8.0);
  if (q <= -0.9) return 0.0;
  return d0 * grid.r_min() / (1.0 + q);
}

/// Integral w(r) |u|^2 r^2 dr for a single radial profile (with the below-r_min
/// power-law head).
inline double weighted_profile_norm_sq(const RadialGrid& grid, const RadialValues& u, WeightKind w) {
  Eigen::ArrayXd density(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    density[i] = channel_weight_value(w, grid.r(i)) * std::norm(u[i]) * grid.r(i) * grid.r(i);
  return integrate_dr(grid, density) + head_correction(grid, density);
}

/// Integral w(r) |psi|^2 with |psi|^2 = |f|^2 + |g|^2 (spherical spinors are
/// orthonormal on each sphere).
inline double weighted_norm_sq(const RadialChannel& ch, WeightKind w) {
  return weighted_profile_norm_sq(ch.grid, ch.f, w) + weighted_profile_norm_sq(ch.grid, ch.g, w);
}

inline double norm_sq(const RadialChannel& ch) { return weighted_norm_sq(ch, WeightKind::ONE); }

inline Complex inner(const RadialChannel& a, const RadialChannel& b) {
  if (a.kappa != b.kappa || !(a.grid == b.grid)) throw InvalidArgument("inner: mismatched channels");
  Eigen::ArrayXd re(a.grid.size()), im(a.grid.size());
  for (int i = 0; i < a.grid.size(); ++i) {
    const Complex v = (a.f[i] * std::conj(b.f[i]) + a.g[i] * std::conj(b.g[i])) * a.grid.r(i) *
                      a.grid.r(i);
    re[i] = v.real();
    im[i] = v.imag();
  }
  return {integrate_dr(a.grid, re), integrate_dr(a.grid, im)};
}

/// H0 = -i alpha.grad + m beta in the kappa channel:
///   upper:  m f - g' + (kappa - 1) g / r
///   lower: -m g + f' + (kappa + 1) f / r
inline RadialChannel apply_free_dirac(const RadialChannel& ch, double mass) {
  RadialChannel out(ch.kappa, ch.grid);
  const RadialValues df = radial_derivative(ch.grid, ch.f);
  const RadialValues dg = radial_derivative(ch.grid, ch.g);
  for (int i = 0; i < ch.grid.size(); ++i) {
    const double r = ch.grid.r(i);
    out.f[i] = mass * ch.f[i] - dg[i] + double(ch.kappa - 1) * ch.g[i] / r;
    out.g[i] = -mass * ch.g[i] + df[i] + double(ch.kappa + 1) * ch.f[i] / r;
  }
  return out;
}

/// (i alpha.grad - m beta + s i eps) in the kappa channel.
inline RadialChannel apply_shifted_dirac(const RadialChannel& ch, double mass, double eps, int sign) {
  RadialChannel out(ch.kappa, ch.grid);
  const RadialValues df = radial_derivative(ch.grid, ch.f);
  const RadialValues dg = radial_derivative(ch.grid, ch.g);
  const Complex shift(0.0, sign * eps);
  for (int i = 0; i < ch.grid.size(); ++i) {
    const double r = ch.grid.r(i);
    out.f[i] = dg[i] - double(ch.kappa - 1) * ch.g[i] / r - mass * ch.f[i] + shift * ch.f[i];
    out.g[i] = -df[i] - double(ch.kappa + 1) * ch.f[i] / r + mass * ch.g[i] + shift * ch.g[i];
  }
  return out;
}

/// Cubic Lagrange interpolation in t = log r of a sampled profile; zero
/// outside the grid.
inline Complex interp_log_cubic(const RadialGrid& grid, const RadialValues& v, double r) {
  if (r < grid.r_min() || r > grid.r_max()) return 0.0;
  const double t = std::log(r / grid.r_min()) / grid.log_step();
  int i0 = static_cast<int>(std::floor(t)) - 1;
  i0 = std::max(0, std::min(i0, grid.size() - 4));
  Complex acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int k = 0; k < 4; ++k)
      if (k != j) w *= (t - (i0 + k)) / double(j - k);
    acc += w * v[i0 + j];
  }
  return acc;
}

/// alpha.(x/|x|) in the channel: (f, g) -> (-i g, i f).
inline RadialChannel apply_alpha_xhat(const RadialChannel& ch) {
  RadialChannel out(ch.kappa, ch.grid);
  out.f = -kImag * ch.g;
  out.g = kImag * ch.f;
  return out;
}

namespace detail {

// Modified spherical Bessel functions i_l and k_hat_l = e^{-x} * poly(1/x),
// l <= 4. Series near zero avoids the cancellation in the closed forms.
inline double bessel_i_mod(int l, double x) {
  if (x < 0.6) {
    double dblfact = 1.0;  // (2l+1)!!
    for (int j = 1; j <= 2 * l + 1; j += 2) dblfact *= j;
    double term = std::pow(x, l) / dblfact;
    double sum = term;
    const double x2 = 0.5 * x * x;
    for (int j = 1; j < 30; ++j) {
      term *= x2 / (j * (2.0 * (l + j) + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  const double sh = std::sinh(x), ch = std::cosh(x);
  switch (l) {
    case 0: return sh / x;
    case 1: return (x * ch - sh) / (x * x);
    case 2: return ((x * x + 3) * sh - 3 * x * ch) / std::pow(x, 3);
    case 3: return ((x * x + 15) * x * ch - (6 * x * x + 15) * sh) / std::pow(x, 4);
    case 4: return ((x * x * x * x + 45 * x * x + 105) * sh - (10 * x * x + 105) * x * ch) / std::pow(x, 5);
    default: throw InvalidArgument("bessel_i_mod: l too large");
  }
}

inline double bessel_k_mod(int l, double x) {
  const double e = std::exp(-x);
  const double y = 1.0 / x;
  switch (l) {
    case 0: return e * y;
    case 1: return e * (y + y * y);
    case 2: return e * (y + 3 * y * y + 3 * y * y * y);
    case 3: return e * (y + 6 * y * y + 15 * y * y * y + 15 * y * y * y * y);
    case 4: return e * (y + 10 * y * y + 45 * std::pow(y, 3) + 105 * std::pow(y, 4) + 105 * std::pow(y, 5));
    default: throw InvalidArgument("bessel_k_mod: l too large");
  }
}

// 4th-order d/dt on the uniform log grid (one-sided at the edges).
inline RadialValues dt_derivative(int m, double h, const RadialValues& f) {
  static const double ce[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  static const double c0[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4};
  static const double c1[5] = {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12};
  RadialValues df(m);
  for (int i = 0; i < m; ++i) {
    Complex acc = 0.0;
    if (i == 0) {
      for (int j = 0; j < 5; ++j) acc += c0[j] * f[j];
    } else if (i == 1) {
      for (int j = 0; j < 5; ++j) acc += c1[j] * f[j];
    } else if (i == m - 2) {
      for (int j = 0; j < 5; ++j) acc -= c1[j] * f[m - 1 - j];
    } else if (i == m - 1) {
      for (int j = 0; j < 5; ++j) acc -= c0[j] * f[m - 1 - j];
    } else {
      for (int j = 0; j < 5; ++j) acc += ce[j] * f[i - 2 + j];
    }
    df[i] = acc / h;
  }
  return df;
}

// Panel integrals Integral_{t_i}^{t_{i+1}} f dt: trapezoid plus the
// Euler-Maclaurin derivative correction (composite ~h^4).
inline RadialValues panel_integrals(const RadialGrid& grid, const RadialValues& f) {
  const int m = grid.size();
  const double h = grid.log_step();
  const RadialValues df = dt_derivative(m, h, f);
  RadialValues panel(m - 1);
  for (int i = 0; i + 1 < m; ++i)
    panel[i] = 0.5 * h * (f[i] + f[i + 1]) - h * h / 12.0 * (df[i + 1] - df[i]);
  return panel;
}

// Cumulative integral F[j] = Integral_{t_0}^{t_j} f dt.
inline RadialValues cumulative_log(const RadialGrid& grid, const RadialValues& f) {
  const RadialValues panel = panel_integrals(grid, f);
  RadialValues out(grid.size());
  out[0] = 0.0;
  for (int i = 1; i < grid.size(); ++i) out[i] = out[i - 1] + panel[i - 1];
  return out;
}

// Remaining integral R[j] = Integral_{t_j}^{t_end} f dt, accumulated from the
// right so small tails are not quantized away by a large running sum.
inline RadialValues cumulative_log_reverse(const RadialGrid& grid, const RadialValues& f) {
  const RadialValues panel = panel_integrals(grid, f);
  const int m = grid.size();
  RadialValues out(m);
  out[m - 1] = 0.0;
  for (int i = m - 2; i >= 0; --i) out[i] = out[i + 1] + panel[i];
  return out;
}

}  // namespace detail

/// (-Delta + a^2)^{-1} on a single l-sector radial profile, via the Green
/// kernel a i_l(a r_<) k_l(a r_>). The integral below r_min uses a power-law
/// fit of the integrand; the tail above r_max is dropped (profiles here decay
/// exponentially well before the boundary).
inline RadialValues helmholtz_green_apply(const RadialGrid& grid, int l, double a,
                                          const RadialValues& u) {
  const int m = grid.size();
  if (!(a > 0.0)) throw InvalidArgument("helmholtz_green_apply: need a > 0");
  if (a * grid.r_max() > 500.0) throw InvalidArgument("helmholtz_green_apply: a r_max too large");
  Eigen::ArrayXd iv(m), kv(m);
  for (int i = 0; i < m; ++i) {
    iv[i] = detail::bessel_i_mod(l, a * grid.r(i));
    kv[i] = detail::bessel_k_mod(l, a * grid.r(i));
  }
  // densities in t = log r: extra factor r
  RadialValues fi(m), fk(m);
  for (int i = 0; i < m; ++i) {
    const double r = grid.r(i);
    fi[i] = iv[i] * u[i] * r * r * r;
    fk[i] = kv[i] * u[i] * r * r * r;
  }
  const RadialValues ci = detail::cumulative_log(grid, fi);
  const RadialValues ck_rem = detail::cumulative_log_reverse(grid, fk);

  // below-r_min correction: u ~ u0 (r/r0)^p, i_l(ar) ~ (ar)^l / (2l+1)!!
  Complex head = 0.0;
  {
    const double r0 = grid.r(0), r1 = grid.r(1);
    const double a0 = std::abs(u[0]), a1 = std::abs(u[1]);
    double p = 0.0;
    if (a0 > 0.0 && a1 > 0.0) p = std::log(a1 / a0) / std::log(r1 / r0);
    p = std::min(p, 6.0);
    if (p > -(l + 2.9)) {
      double dblfact = 1.0;
      for (int j = 1; j <= 2 * l + 1; j += 2) dblfact *= j;
      head = u[0] * std::pow(a, l) / dblfact * std::pow(r0, l + 3.0) / (l + 3.0 + p);
    }
  }

  RadialValues out(m);
  for (int i = 0; i < m; ++i) out[i] = a * (kv[i] * (ci[i] + head) + iv[i] * ck_rem[i]);
  return out;
}

/// Channel free resolvent (i alpha.grad - m beta + s i eps)^{-1}
///   = (i alpha.grad - m beta - s i eps) (-Delta + m^2 + eps^2)^{-1},
/// with the scalar inverse applied per component in its own l sector.
inline RadialChannel apply_free_resolvent(const RadialChannel& rhs, double mass, double eps,
                                          int sign) {
  const double a = std::sqrt(mass * mass + eps * eps);
  RadialChannel mid(rhs.kappa, rhs.grid);
  mid.f = helmholtz_green_apply(rhs.grid, ell_of_kappa(rhs.kappa), a, rhs.f);
  mid.g = helmholtz_green_apply(rhs.grid, ell_of_kappa(-rhs.kappa), a, rhs.g);
  return apply_shifted_dirac(mid, mass, eps, -sign);
}

}  // namespace hardydirac

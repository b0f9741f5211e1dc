#pragma once

#include <string>
#include <utility>

#include "hardydirac/field.hpp"
#include "hardydirac/radial.hpp"

namespace hardydirac {

/// Hermitian matrix potential V(x) with its Coulomb-singularity bound
/// s = sup |x| ||V(x)||. All shipped kinds are spherically symmetric in the
/// sense V = a(r) I4 + offdiag(b(r) sigma.x_hat; conj(b)(r) sigma.x_hat),
/// which is what the kappa-channel form uses.
struct MatrixPotential {
  std::string kind;
  double singularity_bound = 0.0;
  std::function<Mat4(const Vec3&)> evaluate;
  bool has_channel_form = false;
  std::function<double(double)> radial_a;   // diagonal part a(r)
  std::function<Complex(double)> radial_b;  // upper-right block b(r) sigma.x_hat

  bool satisfies_condition() const { return singularity_bound < 1.0; }
};

namespace detail {

inline Mat4 channel_form_matrix(double a, Complex b, const Vec3& xhat) {
  const Mat2 s = contract_sigma(xhat);
  Mat4 m = a * Mat4::Identity();
  m.block<2, 2>(0, 2) += b * s;
  m.block<2, 2>(2, 0) += std::conj(b) * s;
  return m;
}

}  // namespace detail

/// V = (nu / |x|) I4. |x| ||V|| is identically |nu|.
inline MatrixPotential coulomb(double nu) {
  MatrixPotential p;
  p.kind = "coulomb";
  p.singularity_bound = std::abs(nu);
  p.evaluate = [nu](const Vec3& x) -> Mat4 { return (nu / x.norm()) * Mat4::Identity(); };
  p.has_channel_form = true;
  p.radial_a = [nu](double r) { return nu / r; };
  p.radial_b = [](double) { return Complex(0.0, 0.0); };
  return p;
}

/// Electromagnetic potential: electrostatic nu/|x| plus magnetic sigma.A on
/// the off-diagonal blocks. ||x V(x)|| = |nu| + |x||A(x)| exactly for this
/// block shape; the bound is that expression maximized over the given samples.
inline MatrixPotential electromagnetic(double nu, const std::function<Vec3(const Vec3&)>& a_field,
                                       const std::vector<Vec3>& bound_samples) {
  MatrixPotential p;
  p.kind = "electromagnetic";
  p.evaluate = [nu, a_field](const Vec3& x) -> Mat4 {
    const Vec3 a = a_field(x);
    Mat4 m = (nu / x.norm()) * Mat4::Identity();
    const Mat2 sa = contract_sigma(a);
    m.block<2, 2>(0, 2) += sa;
    m.block<2, 2>(2, 0) += sa;
    return m;
  };
  double bound = std::abs(nu);
  for (const auto& x : bound_samples)
    bound = std::max(bound, std::abs(nu) + x.norm() * a_field(x).norm());
  p.singularity_bound = bound;
  return p;
}

/// Sampling set for empirical singularity bounds: grid nodes plus a dense
/// log-spaced shell of small radii in seeded random directions.
inline std::vector<Vec3> bound_sample_points(const CartesianGrid& grid, std::uint64_t seed = 2024,
                                             int shell_count = 64, int directions = 32) {
  std::vector<Vec3> pts;
  const int step = std::max(1, grid.n() / 16);
  for (int ix = 0; ix < grid.n(); ix += step)
    for (int iy = 0; iy < grid.n(); iy += step)
      for (int iz = 0; iz < grid.n(); iz += step) pts.push_back(grid.node(ix, iy, iz));
  Xoshiro256 rng(seed);
  for (int s = 0; s < shell_count; ++s) {
    const double r = 1e-6 * std::pow(grid.half_width() / 1e-6, s / double(shell_count - 1));
    for (int d = 0; d < directions; ++d) {
      Vec3 u(rng.next_normal(), rng.next_normal(), rng.next_normal());
      pts.push_back(r * u.normalized());
    }
  }
  return pts;
}

/// The Hermitian family of Remark 1.4:
///   V = (1/|x|) [[c I2, b sigma.x_hat], [conj(b) sigma.x_hat, c I2]],
///   b = c (eps + i m)/sqrt(eps^2 + m^2) - i.
/// (H - i eps) annihilates psi_0^{eps,m} for every real c; |x| ||V|| is the
/// constant max(|c + |b||, |c - |b||), which equals 1 exactly for c = 0
/// (b = -i) and for c = 1 in the eps -> 0 limit (b = 0).
inline MatrixPotential remark14_family(double c, double eps, double mass) {
  const double k = std::sqrt(eps * eps + mass * mass);
  if (!(k > 0.0)) throw InvalidArgument("remark14_family: need eps > 0 or m > 0");
  if (eps < 0.0) throw InvalidArgument("remark14_family: eps must be >= 0");
  const Complex zeta(eps / k, mass / k);
  const Complex b = c * zeta - kImag;
  MatrixPotential p;
  p.kind = "remark14";
  p.singularity_bound = std::max(std::abs(c + std::abs(b)), std::abs(c - std::abs(b)));
  p.evaluate = [c, b](const Vec3& x) -> Mat4 {
    const double r = x.norm();
    return detail::channel_form_matrix(c / r, b / r, Vec3(x / r));
  };
  p.has_channel_form = true;
  p.radial_a = [c](double r) { return c / r; };
  p.radial_b = [b](double r) { return b / r; };
  return p;
}

/// V(r) I4 for a scalar radial profile.
inline MatrixPotential radial_scalar(const std::function<double(double)>& v, double bound) {
  MatrixPotential p;
  p.kind = "radial-scalar";
  p.singularity_bound = bound;
  p.evaluate = [v](const Vec3& x) -> Mat4 { return v(x.norm()) * Mat4::Identity(); };
  p.has_channel_form = true;
  p.radial_a = v;
  p.radial_b = [](double) { return Complex(0.0, 0.0); };
  return p;
}

/// Black-box Hermitian potential; the bound is an empirical sup over samples.
inline MatrixPotential custom(const std::function<Mat4(const Vec3&)>& eval,
                              const std::vector<Vec3>& bound_samples) {
  MatrixPotential p;
  p.kind = "custom";
  p.evaluate = eval;
  double bound = 0.0;
  for (const auto& x : bound_samples) {
    const Mat4 m = eval(x);
    if (!is_hermitian(m))
      throw InvalidArgument("custom potential: non-Hermitian sample at |x| = " +
                            std::to_string(x.norm()));
    bound = std::max(bound, x.norm() * operator_norm(m));
  }
  p.singularity_bound = bound;
  return p;
}

/// V psi on the Cartesian grid, pointwise.
inline SpinorField apply_potential(const MatrixPotential& pot, const SpinorField& psi) {
  return apply_pointwise_matrix(psi, [&](const Vec3& x, std::size_t) { return pot.evaluate(x); });
}

/// V psi in the kappa channel:
///   upper: a f - i b g,  lower: a g + i conj(b) f.
inline RadialChannel apply_potential(const MatrixPotential& pot, const RadialChannel& ch) {
  if (!pot.has_channel_form)
    throw UnsupportedCombination("potential has no radial channel form: " + pot.kind);
  RadialChannel out(ch.kappa, ch.grid);
  for (int i = 0; i < ch.grid.size(); ++i) {
    const double r = ch.grid.r(i);
    const double a = pot.radial_a(r);
    const Complex b = pot.radial_b(r);
    out.f[i] = a * ch.f[i] - kImag * b * ch.g[i];
    out.g[i] = a * ch.g[i] + kImag * std::conj(b) * ch.f[i];
  }
  return out;
}

/// Radial scalar potential with the Section 5 averages
///   h+(r) = (1/r^2) Int_0^r V t^2 dt,  h-(r) = r^2 Int_r^inf V(t)/t^2 dt,
/// computed by cumulative log-grid quadrature with power-law end corrections.
struct RadialScalarPotential {
  RadialGrid grid;
  Eigen::ArrayXd v;
  Eigen::ArrayXd h_plus;
  Eigen::ArrayXd h_minus;
  double h_plus_sup = 0.0;
  double h_minus_sup = 0.0;

  explicit RadialScalarPotential(const RadialGrid& g)
      : grid(g), v(g.size()), h_plus(g.size()), h_minus(g.size()) {}
};

namespace detail {

// power-law exponent of a positive profile at the first/last grid nodes
inline double local_exponent(const RadialGrid& grid, const Eigen::ArrayXd& vals, bool at_origin) {
  const int m = grid.size();
  const int i0 = at_origin ? 0 : m - 9;
  const int i1 = at_origin ? 8 : m - 1;
  if (!(vals[i0] > 0.0) || !(vals[i1] > 0.0)) return 0.0;
  return std::log(vals[i1] / vals[i0]) / std::log(grid.r(i1) / grid.r(i0));
}

}  // namespace detail

inline RadialScalarPotential compute_h_plus_minus(const RadialGrid& grid,
                                                  const std::function<double(double)>& v_fn) {
  RadialScalarPotential out(grid);
  const int m = grid.size();
  for (int i = 0; i < m; ++i) out.v[i] = v_fn(grid.r(i));
  if ((out.v < 0.0).any()) throw InvalidArgument("compute_h_plus_minus: V must be >= 0");

  // integrability checks via local power laws
  const double p0 = detail::local_exponent(grid, out.v, true);
  const double q0 = detail::local_exponent(grid, out.v, false);
  if (p0 <= -3.0 + 1e-9)
    throw InvalidArgument("h+: Int_0 V t^2 dt diverges (V ~ r^" + std::to_string(p0) +
                          " near 0)");
  if (q0 >= 1.0 - 1e-9)
    throw InvalidArgument("h-: Int^inf V / t^2 dt diverges (V ~ r^" + std::to_string(q0) +
                          " near r_max)");

  RadialValues dens_plus(m), dens_minus(m);
  for (int i = 0; i < m; ++i) {
    const double r = grid.r(i);
    dens_plus[i] = out.v[i] * r * r * r;   // extra r from dt = dr/r
    dens_minus[i] = out.v[i] / r;          // (V / t^2) t, same convention
  }
  const RadialValues cum_plus = detail::cumulative_log(grid, dens_plus);
  const RadialValues rem_minus = detail::cumulative_log_reverse(grid, dens_minus);

  // end corrections: integrate V on auxiliary log extensions, then close with
  // the power law where the extension itself ends
  double head = 0.0;
  {
    const RadialGrid ext(grid.r_min() * 1e-6, grid.r_min(), 512);
    RadialValues d(ext.size());
    for (int i = 0; i < ext.size(); ++i) d[i] = v_fn(ext.r(i)) * std::pow(ext.r(i), 3.0);
    head = detail::cumulative_log(ext, d)[ext.size() - 1].real();
    if (d[0].real() > 0.0 && p0 > -3.0) head += d[0].real() / (3.0 + p0);
  }
  double tail = 0.0;
  {
    const RadialGrid ext(grid.r_max(), grid.r_max() * 1e4, 512);
    RadialValues d(ext.size());
    for (int i = 0; i < ext.size(); ++i) d[i] = v_fn(ext.r(i)) / ext.r(i);
    tail = detail::cumulative_log(ext, d)[ext.size() - 1].real();
    const double v_end = v_fn(ext.r_max());
    if (v_end > 0.0 && q0 < 1.0) tail += v_end / (ext.r_max() * (1.0 - q0));
  }

  for (int i = 0; i < m; ++i) {
    const double r = grid.r(i);
    out.h_plus[i] = (head + cum_plus[i].real()) / (r * r);
    out.h_minus[i] = r * r * (rem_minus[i].real() + tail);
  }
  out.h_plus_sup = out.h_plus.maxCoeff();
  out.h_minus_sup = out.h_minus.maxCoeff();
  return out;
}

/// Relative residual of the defining ODEs 2h+/r + h+' = V = 2h-/r - h-' on the
/// grid interior (the identity the Section 5 proof rests on).
inline std::pair<double, double> h_ode_residuals(const RadialScalarPotential& pot) {
  const int m = pot.grid.size();
  const RadialValues dp = radial_derivative(pot.grid, pot.h_plus.cast<Complex>());
  const RadialValues dm = radial_derivative(pot.grid, pot.h_minus.cast<Complex>());
  double num_p = 0.0, num_m = 0.0, den = 0.0;
  for (int i = 8; i < m - 8; ++i) {
    const double r = pot.grid.r(i);
    num_p += std::norm(2.0 * pot.h_plus[i] / r + dp[i] - pot.v[i]);
    num_m += std::norm(2.0 * pot.h_minus[i] / r - dm[i] - pot.v[i]);
    den += pot.v[i] * pot.v[i];
  }
  return {std::sqrt(num_p / den), std::sqrt(num_m / den)};
}

}  // namespace hardydirac

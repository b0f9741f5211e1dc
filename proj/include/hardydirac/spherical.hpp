#pragma once

#include <vector>

#include "hardydirac/field.hpp"
#include "hardydirac/radial.hpp"

namespace hardydirac {

/// Fully normalized spherical harmonic Y_lm(theta, phi), Condon-Shortley phase.
inline Complex spherical_harmonic(int l, int m, double cos_theta, double phi) {
  if (l < 0 || std::abs(m) > l) return 0.0;
  const int ma = std::abs(m);
  const double x = cos_theta;
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  // N_mm upward, then l upward at fixed |m|
  double nmm = std::sqrt(1.0 / (4.0 * M_PI));
  for (int k = 1; k <= ma; ++k) nmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  double nlm = nmm;
  if (l > ma) {
    double prev = nmm;
    nlm = std::sqrt(2.0 * ma + 3.0) * x * nmm;
    for (int ll = ma + 2; ll <= l; ++ll) {
      const double a = std::sqrt(((2.0 * ll - 1.0) * (2.0 * ll + 1.0)) /
                                 (double(ll - ma) * double(ll + ma)));
      const double b = std::sqrt(((2.0 * ll + 1.0) * (ll - ma - 1.0) * (ll + ma - 1.0)) /
                                 ((2.0 * ll - 3.0) * double(ll - ma) * double(ll + ma)));
      const double cur = a * x * nlm - b * prev;
      prev = nlm;
      nlm = cur;
    }
  }
  const Complex phase = std::polar(1.0, ma * phi);
  if (m >= 0) return nlm * phase;
  const double sign = (ma % 2 == 0) ? 1.0 : -1.0;
  return sign * nlm * std::conj(phase);
}

/// Spherical spinor Omega_{kappa, m_j} (two_mj = 2 m_j, odd).
/// Conventions: (sigma.L + 1) Omega_kappa = -kappa Omega_kappa and
/// (sigma.x_hat) Omega_kappa = -Omega_{-kappa}.
inline Vec2c spherical_spinor(int kappa, int two_mj, double cos_theta, double phi) {
  if (kappa == 0) throw InvalidArgument("spherical_spinor: kappa must be nonzero");
  if (two_mj % 2 == 0 || std::abs(two_mj) > 2 * std::abs(kappa) - 1)
    throw InvalidArgument("spherical_spinor: invalid m_j");
  const int l = ell_of_kappa(kappa);
  const int m_up = (two_mj - 1) / 2;
  const int m_dn = (two_mj + 1) / 2;
  const double cu = (2.0 * l + two_mj + 1.0) / (2.0 * (2.0 * l + 1.0));
  const double cd = (2.0 * l - two_mj + 1.0) / (2.0 * (2.0 * l + 1.0));
  Vec2c out;
  if (kappa < 0) {
    out[0] = std::sqrt(cu) * spherical_harmonic(l, m_up, cos_theta, phi);
    out[1] = std::sqrt(cd) * spherical_harmonic(l, m_dn, cos_theta, phi);
  } else {
    out[0] = -std::sqrt(cd) * spherical_harmonic(l, m_up, cos_theta, phi);
    out[1] = std::sqrt(cu) * spherical_harmonic(l, m_dn, cos_theta, phi);
  }
  return out;
}

inline Vec2c spherical_spinor(int kappa, int two_mj, const Vec3& x) {
  const double r = x.norm();
  return spherical_spinor(kappa, two_mj, x[2] / r, std::atan2(x[1], x[0]));
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

/// Product angular quadrature, exact for spherical polynomials of degree
/// min(2 n_theta - 1, n_phi - 1).
struct SphereQuadrature {
  std::vector<double> cos_theta;
  std::vector<double> theta_weight;
  int n_phi;

  explicit SphereQuadrature(int l_max) : n_phi(2 * l_max + 2) {
    gauss_legendre(l_max + 1, cos_theta, theta_weight);
  }

  int size() const { return static_cast<int>(cos_theta.size()) * n_phi; }
  double phi(int b) const { return 2.0 * M_PI * b / n_phi; }
  double weight(int a) const { return theta_weight[a] * 2.0 * M_PI / n_phi; }
};

/// A Pauli field sampled on radial shells x angular quadrature nodes; the
/// representation used for the spherical-spinor expansion and the projectors.
struct SphereSampledField {
  RadialGrid radial;
  SphereQuadrature quad;
  Eigen::Matrix<Complex, 2, Eigen::Dynamic> values;  // column = shell * quad.size() + angular

  SphereSampledField(const RadialGrid& rg, int l_max)
      : radial(rg), quad(l_max), values(Eigen::Matrix<Complex, 2, Eigen::Dynamic>::Zero(
                                     2, static_cast<std::size_t>(rg.size()) * quad.size())) {}

  template <typename F>  // F: (r, cos_theta, phi) -> Vec2c
  static SphereSampledField from_function(const RadialGrid& rg, int l_max, F&& fn) {
    SphereSampledField out(rg, l_max);
    const int na = out.quad.size();
    const int nt = static_cast<int>(out.quad.cos_theta.size());
    for (int i = 0; i < rg.size(); ++i)
      for (int a = 0; a < nt; ++a)
        for (int b = 0; b < out.quad.n_phi; ++b)
          out.values.col(static_cast<std::size_t>(i) * na + a * out.quad.n_phi + b) =
              fn(rg.r(i), out.quad.cos_theta[a], out.quad.phi(b));
    return out;
  }

  std::size_t col(int shell, int a, int b) const {
    return static_cast<std::size_t>(shell) * quad.size() + a * quad.n_phi + b;
  }
};

inline double norm_sq(const SphereSampledField& f) {
  const auto vw = f.radial.dr_weights();
  const int nt = static_cast<int>(f.quad.cos_theta.size());
  double acc = 0.0;
  for (int i = 0; i < f.radial.size(); ++i) {
    double shell = 0.0;
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < f.quad.n_phi; ++b)
        shell += f.quad.weight(a) * f.values.col(f.col(i, a, b)).squaredNorm();
    acc += vw[i] * f.radial.r(i) * f.radial.r(i) * shell;
  }
  return acc;
}

/// Coefficients a_{kappa, m_j}(r) of the spherical-spinor expansion up to l_max.
struct SpinorExpansion {
  struct Mode {
    int kappa;
    int two_mj;
    RadialValues profile;
  };
  RadialGrid radial;
  std::vector<Mode> modes;
  double truncation_fraction = 0.0;  // energy above l_max over total energy

  explicit SpinorExpansion(const RadialGrid& rg) : radial(rg) {}
};

inline SpinorExpansion expand_spherical_spinors(const SphereSampledField& field, int l_max) {
  SpinorExpansion out(field.radial);
  const int nt = static_cast<int>(field.quad.cos_theta.size());
  const int nr = field.radial.size();
  double captured = 0.0;
  for (int kappa = -(l_max + 1); kappa <= l_max; ++kappa) {
    if (kappa == 0) continue;
    if (ell_of_kappa(kappa) > l_max) continue;
    for (int two_mj = -(2 * std::abs(kappa) - 1); two_mj <= 2 * std::abs(kappa) - 1; two_mj += 2) {
      SpinorExpansion::Mode mode{kappa, two_mj, RadialValues::Zero(nr)};
      for (int i = 0; i < nr; ++i) {
        Complex acc = 0.0;
        for (int a = 0; a < nt; ++a)
          for (int b = 0; b < field.quad.n_phi; ++b) {
            const Vec2c omega =
                spherical_spinor(kappa, two_mj, field.quad.cos_theta[a], field.quad.phi(b));
            acc += field.quad.weight(a) * omega.dot(field.values.col(field.col(i, a, b)));
          }
        mode.profile[i] = acc;
      }
      out.modes.push_back(std::move(mode));
    }
  }
  const auto vw = field.radial.volume_weights();
  for (const auto& mode : out.modes)
    for (int i = 0; i < nr; ++i) captured += vw[i] * std::norm(mode.profile[i]);
  const double total = norm_sq(field);
  out.truncation_fraction = total > 0.0 ? std::max(0.0, (total - captured) / total) : 0.0;
  return out;
}

inline SphereSampledField synthesize(const SpinorExpansion& exp_coeffs, const SphereQuadrature& quad,
                                     int l_max) {
  SphereSampledField out(exp_coeffs.radial, l_max);
  const int nt = static_cast<int>(quad.cos_theta.size());
  for (const auto& mode : exp_coeffs.modes)
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < quad.n_phi; ++b) {
        const Vec2c omega = spherical_spinor(mode.kappa, mode.two_mj, quad.cos_theta[a], quad.phi(b));
        for (int i = 0; i < exp_coeffs.radial.size(); ++i)
          out.values.col(out.col(i, a, b)) += mode.profile[i] * omega;
      }
  return out;
}

struct ProjectionResult {
  SphereSampledField field;
  double truncation_fraction;
};

/// Spectral projectors P± = (1 ± (1+sigma.L)/|1+sigma.L|)/2: P+ keeps the
/// kappa < 0 sectors ((1+sigma.L) Omega_kappa = -kappa Omega_kappa > 0).
inline ProjectionResult project_pm(const SphereSampledField& field, int sign, int l_max = 8) {
  if (sign != 1 && sign != -1) throw InvalidArgument("project_pm: sign must be +1 or -1");
  SpinorExpansion coeffs = expand_spherical_spinors(field, l_max);
  SpinorExpansion kept(coeffs.radial);
  kept.truncation_fraction = coeffs.truncation_fraction;
  for (auto& mode : coeffs.modes)
    if ((sign > 0 && mode.kappa < 0) || (sign < 0 && mode.kappa > 0))
      kept.modes.push_back(std::move(mode));
  return {synthesize(kept, field.quad, l_max), coeffs.truncation_fraction};
}

/// psi = f(r) Omega_kappa + i g(r) Omega_{-kappa} evaluated on a Cartesian grid.
inline SpinorField embed_channel(const CartesianGrid& grid, int kappa, int two_mj,
                                 const std::function<Complex(double)>& fr,
                                 const std::function<Complex(double)>& gr) {
  return SpinorField::from_function(grid, [&](const Vec3& x) -> Vec4c {
    const double r = x.norm();
    const Vec2c up = fr(r) * spherical_spinor(kappa, two_mj, x);
    const Vec2c dn = kImag * gr(r) * spherical_spinor(-kappa, two_mj, x);
    Vec4c out;
    out << up[0], up[1], dn[0], dn[1];
    return out;
  });
}

inline PauliField embed_pauli(const CartesianGrid& grid, int kappa, int two_mj,
                              const std::function<Complex(double)>& fr) {
  return PauliField::from_function(grid, [&](const Vec3& x) -> Vec2c {
    return fr(x.norm()) * spherical_spinor(kappa, two_mj, x);
  });
}

}  // namespace hardydirac

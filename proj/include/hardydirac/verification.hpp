#pragma once

#include <string>
#include <vector>

#include "hardydirac/operators.hpp"
#include "hardydirac/potentials.hpp"

namespace hardydirac {

enum class InequalityId {
  LEM2,
  FOR_FI,
  FOR_FI_NABLA,
  LEM1,
  LEM3,
  IMPROVED_89,
  HARDY_DIRAC_FINAL,
  GENERAL_HIP
};

inline std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::LEM2: return "lem2";
    case InequalityId::FOR_FI: return "for-fi";
    case InequalityId::FOR_FI_NABLA: return "for-fi-nabla";
    case InequalityId::LEM1: return "lem1";
    case InequalityId::LEM3: return "lem3";
    case InequalityId::IMPROVED_89: return "improved-8-9";
    case InequalityId::HARDY_DIRAC_FINAL: return "hardy-dirac-final";
    case InequalityId::GENERAL_HIP: return "general-hip";
  }
  return "unknown";
}

inline InequalityId inequality_from_string(const std::string& s) {
  for (auto id : {InequalityId::LEM2, InequalityId::FOR_FI, InequalityId::FOR_FI_NABLA,
                  InequalityId::LEM1, InequalityId::LEM3, InequalityId::IMPROVED_89,
                  InequalityId::HARDY_DIRAC_FINAL, InequalityId::GENERAL_HIP})
    if (to_string(id) == s) return id;
  throw SchemaError("unknown inequality id: " + s);
}

/// One evaluated inequality instance. ratio = LHS/RHS is <= 1 up to quadrature
/// error for every id, so sharpness always reads as ratio -> 1.
struct InequalityReport {
  InequalityId id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;     // rhs - lhs
  double ratio = 0.0;     // lhs / rhs when rhs > 0, else 0
  double quad_err = 0.0;  // |value(grid) - value(refined x2)|, summed over both sides
  double mass = 0.0;
  double eps = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  int kappa = 0;
  std::string path;
  /// IMPROVED_89 only: the measured constant RHS / Int |x||i alpha.grad psi|^2
  /// (equals 8/9 at the extremal family).
  double measured_constant = 0.0;

  void finalize() {
    slack = rhs - lhs;
    ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    if (!std::isfinite(lhs) || !std::isfinite(rhs))
      throw NumericalBreakdown("inequality report has non-finite values");
  }
};

struct VerifyParams {
  double mass = 0.0;
  double eps = 1.0;
  int sign = +1;
  bool estimate_quadrature_error = true;
};

namespace detail {

struct TwoSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
};

// ---- kappa-channel evaluations -------------------------------------------

// scalar profiles (FOR_FI, LEM1): u(r) with |phi|^2 = |u|^2, d_r phi = u'
inline TwoSides eval_scalar_radial(InequalityId id, const RadialGrid& g, const RadialValues& u,
                                   const VerifyParams& p) {
  const double s = std::sqrt(1.0 + p.mass * p.mass);
  const RadialValues du = radial_derivative(g, u);
  TwoSides out;
  switch (id) {
    case InequalityId::FOR_FI:
      out.lhs = weighted_profile_norm_sq(g, u, WeightKind::INV_ABS_X) +
                s * weighted_profile_norm_sq(g, u, WeightKind::ONE);
      out.rhs = weighted_profile_norm_sq(g, du, WeightKind::ABS_X) +
                s * s * weighted_profile_norm_sq(g, u, WeightKind::ABS_X);
      return out;
    case InequalityId::LEM1:
      out.lhs = weighted_profile_norm_sq(g, u, WeightKind::ONE);
      out.rhs = (2.0 / 3.0) * std::sqrt(weighted_profile_norm_sq(g, u, WeightKind::ABS_X)) *
                std::sqrt(weighted_profile_norm_sq(g, du, WeightKind::ABS_X));
      return out;
    default:
      throw InvalidArgument("scalar radial path supports FOR_FI and LEM1 only");
  }
}

// Pauli-level quantities for a single profile f Omega_kappa:
//   d_r phi = f' Omega_kappa, sigma.grad phi = -(f' + (1+kappa) f/r) Omega_{-kappa}
inline TwoSides eval_pauli_channel(InequalityId id, const RadialGrid& g, int kappa,
                                   const RadialValues& f, const VerifyParams& p) {
  const double s = std::sqrt(1.0 + p.mass * p.mass);
  const RadialValues df = radial_derivative(g, f);
  RadialValues sg(g.size());
  for (int i = 0; i < g.size(); ++i) sg[i] = df[i] + double(1 + kappa) * f[i] / g.r(i);
  TwoSides out;
  switch (id) {
    case InequalityId::LEM2:
      out.lhs = weighted_profile_norm_sq(g, df, WeightKind::ABS_X);
      out.rhs = weighted_profile_norm_sq(g, sg, WeightKind::ABS_X);
      return out;
    case InequalityId::LEM3:
      out.lhs = weighted_profile_norm_sq(g, f, WeightKind::ONE);
      out.rhs = (2.0 / 3.0) * std::sqrt(weighted_profile_norm_sq(g, f, WeightKind::ABS_X)) *
                std::sqrt(weighted_profile_norm_sq(g, sg, WeightKind::ABS_X));
      return out;
    case InequalityId::FOR_FI_NABLA:
      out.lhs = s * weighted_profile_norm_sq(g, f, WeightKind::ONE);
      out.rhs = weighted_profile_norm_sq(g, sg, WeightKind::ABS_X) +
                s * s * weighted_profile_norm_sq(g, f, WeightKind::ABS_X) -
                weighted_profile_norm_sq(g, f, WeightKind::INV_ABS_X);
      return out;
    default:
      throw InvalidArgument("pauli channel path: unsupported id");
  }
}

inline TwoSides eval_spinor_channel(InequalityId id, const RadialChannel& ch,
                                    const VerifyParams& p) {
  TwoSides out;
  switch (id) {
    case InequalityId::IMPROVED_89: {
      const RadialChannel grad = apply_shifted_dirac(ch, 0.0, 0.0, +1);  // i alpha.grad
      const RadialChannel dop = apply_shifted_dirac(ch, p.mass, 1.0, p.sign);
      const double grad_sq = weighted_norm_sq(grad, WeightKind::ABS_X);
      out.lhs = (8.0 / 9.0) * grad_sq;
      out.rhs = weighted_norm_sq(dop, WeightKind::ABS_X);
      out.constant = grad_sq > 0.0 ? out.rhs / grad_sq : 0.0;
      return out;
    }
    case InequalityId::HARDY_DIRAC_FINAL: {
      const RadialChannel dop = apply_shifted_dirac(ch, p.mass, p.eps, p.sign);
      out.lhs = weighted_norm_sq(ch, WeightKind::INV_ABS_X);
      out.rhs = weighted_norm_sq(dop, WeightKind::ABS_X);
      return out;
    }
    default:
      throw InvalidArgument("spinor channel path: unsupported id");
  }
}

inline RadialChannel interp_channel(const RadialChannel& ch, const RadialGrid& fine) {
  RadialChannel out(ch.kappa, fine);
  for (int i = 0; i < fine.size(); ++i) {
    out.f[i] = interp_log_cubic(ch.grid, ch.f, fine.r(i));
    out.g[i] = interp_log_cubic(ch.grid, ch.g, fine.r(i));
  }
  return out;
}

inline RadialValues interp_profile(const RadialGrid& g, const RadialValues& u,
                                   const RadialGrid& fine) {
  RadialValues out(fine.size());
  for (int i = 0; i < fine.size(); ++i) out[i] = interp_log_cubic(g, u, fine.r(i));
  return out;
}

// ---- Cartesian evaluations ------------------------------------------------

/// Spectral zero-padding onto the 2N grid (exact for band-limited fields).
template <int NC>
CartesianField<NC> refine_spectral(const CartesianField<NC>& f) {
  const int n = f.grid.n();
  const CartesianGrid fine(f.grid.half_width(), 2 * n);
  CartesianField<NC> hat = fft_forward(f);
  CartesianField<NC> fat(fine);
  for (int mx = 0; mx < n; ++mx)
    for (int my = 0; my < n; ++my)
      for (int mz = 0; mz < n; ++mz) {
        const int kx = mx < n / 2 ? mx : mx - n;
        const int ky = my < n / 2 ? my : my - n;
        const int kz = mz < n / 2 ? mz : mz - n;
        if (std::abs(2 * kx) == n || std::abs(2 * ky) == n || std::abs(2 * kz) == n) continue;
        const auto wrap = [&](int k) { return k >= 0 ? k : k + 2 * n; };
        fat.values.col(fine.index(wrap(kx), wrap(ky), wrap(kz))) =
            8.0 * hat.values.col(f.grid.index(mx, my, mz));
      }
  return fft_inverse(std::move(fat));
}

inline TwoSides eval_pauli_cartesian(InequalityId id, const PauliField& phi,
                                     const VerifyParams& p) {
  const double s = std::sqrt(1.0 + p.mass * p.mass);
  TwoSides out;
  switch (id) {
    case InequalityId::LEM2: {
      out.lhs = weighted_norm_sq(radial_derivative(phi), WeightKind::ABS_X);
      out.rhs = weighted_norm_sq(sigma_grad(phi), WeightKind::ABS_X);
      return out;
    }
    case InequalityId::LEM3: {
      out.lhs = norm_sq(phi);
      out.rhs = (2.0 / 3.0) * std::sqrt(weighted_norm_sq(phi, WeightKind::ABS_X)) *
                std::sqrt(weighted_norm_sq(sigma_grad(phi), WeightKind::ABS_X));
      return out;
    }
    case InequalityId::LEM1: {
      out.lhs = norm_sq(phi);
      out.rhs = (2.0 / 3.0) * std::sqrt(weighted_norm_sq(phi, WeightKind::ABS_X)) *
                std::sqrt(weighted_norm_sq(radial_derivative(phi), WeightKind::ABS_X));
      return out;
    }
    case InequalityId::FOR_FI: {
      out.lhs = weighted_norm_sq(phi, WeightKind::INV_ABS_X) + s * norm_sq(phi);
      out.rhs = weighted_norm_sq(radial_derivative(phi), WeightKind::ABS_X) +
                s * s * weighted_norm_sq(phi, WeightKind::ABS_X);
      return out;
    }
    case InequalityId::FOR_FI_NABLA: {
      out.lhs = s * norm_sq(phi);
      out.rhs = weighted_norm_sq(sigma_grad(phi), WeightKind::ABS_X) +
                s * s * weighted_norm_sq(phi, WeightKind::ABS_X) -
                weighted_norm_sq(phi, WeightKind::INV_ABS_X);
      return out;
    }
    default:
      throw InvalidArgument("pauli cartesian path: unsupported id");
  }
}

inline TwoSides eval_spinor_cartesian(InequalityId id, const SpinorField& psi,
                                      const VerifyParams& p) {
  TwoSides out;
  switch (id) {
    case InequalityId::IMPROVED_89: {
      const SpinorField grad = alpha_grad(psi);  // |alpha.grad| = |i alpha.grad|
      const SpinorField dop = apply_resolvent_inverse_op(psi, FreeDiracParams(p.mass, 1.0, p.sign));
      const double grad_sq = weighted_norm_sq(grad, WeightKind::ABS_X);
      out.lhs = (8.0 / 9.0) * grad_sq;
      out.rhs = weighted_norm_sq(dop, WeightKind::ABS_X);
      out.constant = grad_sq > 0.0 ? out.rhs / grad_sq : 0.0;
      return out;
    }
    case InequalityId::HARDY_DIRAC_FINAL: {
      const SpinorField dop =
          apply_resolvent_inverse_op(psi, FreeDiracParams(p.mass, p.eps, p.sign));
      out.lhs = weighted_norm_sq(psi, WeightKind::INV_ABS_X);
      out.rhs = weighted_norm_sq(dop, WeightKind::ABS_X);
      return out;
    }
    default:
      throw InvalidArgument("spinor cartesian path: unsupported id");
  }
}

}  // namespace detail

// ---- public verify entry points -------------------------------------------

/// Scalar radial profile (FOR_FI, LEM1 with radial phi).
inline InequalityReport verify(InequalityId id, const RadialGrid& grid, const RadialValues& u,
                               const VerifyParams& p) {
  InequalityReport rep;
  rep.id = id;
  rep.mass = p.mass;
  rep.eps = p.eps;
  rep.path = "radial-scalar";
  const auto sides = detail::eval_scalar_radial(id, grid, u, p);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  if (p.estimate_quadrature_error) {
    const RadialGrid fine = grid.refined();
    const auto ref = detail::eval_scalar_radial(id, fine, detail::interp_profile(grid, u, fine), p);
    rep.quad_err = std::abs(ref.lhs - rep.lhs) + std::abs(ref.rhs - rep.rhs);
  }
  rep.finalize();
  return rep;
}

/// Single-kappa Pauli profile f(r) Omega_kappa (LEM2, LEM3, FOR_FI_NABLA).
inline InequalityReport verify(InequalityId id, const RadialGrid& grid, int kappa,
                               const RadialValues& f, const VerifyParams& p) {
  InequalityReport rep;
  rep.id = id;
  rep.mass = p.mass;
  rep.eps = p.eps;
  rep.kappa = kappa;
  rep.path = "radial-channel";
  const auto sides = detail::eval_pauli_channel(id, grid, kappa, f, p);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  if (p.estimate_quadrature_error) {
    const RadialGrid fine = grid.refined();
    const auto ref =
        detail::eval_pauli_channel(id, fine, kappa, detail::interp_profile(grid, f, fine), p);
    rep.quad_err = std::abs(ref.lhs - rep.lhs) + std::abs(ref.rhs - rep.rhs);
  }
  rep.finalize();
  return rep;
}

/// Dirac channel field (IMPROVED_89, HARDY_DIRAC_FINAL).
inline InequalityReport verify(InequalityId id, const RadialChannel& ch, const VerifyParams& p) {
  InequalityReport rep;
  rep.id = id;
  rep.mass = p.mass;
  rep.eps = id == InequalityId::IMPROVED_89 ? 1.0 : p.eps;
  rep.kappa = ch.kappa;
  rep.path = "radial-channel";
  const auto sides = detail::eval_spinor_channel(id, ch, p);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  rep.measured_constant = sides.constant;
  if (p.estimate_quadrature_error) {
    const auto ref = detail::eval_spinor_channel(id, detail::interp_channel(ch, ch.grid.refined()), p);
    rep.quad_err = std::abs(ref.lhs - rep.lhs) + std::abs(ref.rhs - rep.rhs);
  }
  rep.finalize();
  return rep;
}

/// Cartesian Pauli field (LEM2, LEM3, LEM1, FOR_FI, FOR_FI_NABLA; mixed fields).
inline InequalityReport verify(InequalityId id, const PauliField& phi, const VerifyParams& p) {
  InequalityReport rep;
  rep.id = id;
  rep.mass = p.mass;
  rep.eps = p.eps;
  rep.path = "cartesian";
  const auto sides = detail::eval_pauli_cartesian(id, phi, p);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  if (p.estimate_quadrature_error) {
    const auto ref = detail::eval_pauli_cartesian(id, detail::refine_spectral(phi), p);
    rep.quad_err = std::abs(ref.lhs - rep.lhs) + std::abs(ref.rhs - rep.rhs);
  }
  rep.finalize();
  return rep;
}

/// Cartesian Dirac field (IMPROVED_89, HARDY_DIRAC_FINAL).
inline InequalityReport verify(InequalityId id, const SpinorField& psi, const VerifyParams& p) {
  InequalityReport rep;
  rep.id = id;
  rep.mass = p.mass;
  rep.eps = id == InequalityId::IMPROVED_89 ? 1.0 : p.eps;
  rep.path = "cartesian";
  const auto sides = detail::eval_spinor_cartesian(id, psi, p);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  rep.measured_constant = sides.constant;
  if (p.estimate_quadrature_error) {
    const auto ref = detail::eval_spinor_cartesian(id, detail::refine_spectral(psi), p);
    rep.quad_err = std::abs(ref.lhs - rep.lhs) + std::abs(ref.rhs - rep.rhs);
  }
  rep.finalize();
  return rep;
}

/// Theorem 5.1: Int V |psi|^2 <= Int V^{-1} |(alpha.grad + i m beta +- eps)psi|^2
///              + sqrt(m^2 + eps^2) (Int |(h- - h+) psi|^2)^{1/2} (Int |psi|^2)^{1/2}.
inline InequalityReport verify_general_hip(const RadialChannel& ch,
                                           const RadialScalarPotential& pot,
                                           const VerifyParams& p) {
  if (!(ch.grid == pot.grid))
    throw InvalidArgument("verify_general_hip: field and potential grids differ");
  const auto eval = [&p](const RadialChannel& c, const RadialScalarPotential& v) {
    detail::TwoSides out;
    // |(alpha.grad + i m beta + s eps)psi| = |(i alpha.grad - m beta + s i eps)psi|
    const RadialChannel dop = apply_shifted_dirac(c, p.mass, p.eps, p.sign);
    const int n = c.grid.size();
    Eigen::ArrayXd lhs_d(n), rhs_d(n), cross_d(n), l2_d(n);
    for (int i = 0; i < n; ++i) {
      const double r2 = c.grid.r(i) * c.grid.r(i);
      const double a2 = std::norm(c.f[i]) + std::norm(c.g[i]);
      const double d2 = std::norm(dop.f[i]) + std::norm(dop.g[i]);
      const double hd = v.h_minus[i] - v.h_plus[i];
      lhs_d[i] = v.v[i] * a2 * r2;
      rhs_d[i] = d2 / v.v[i] * r2;
      cross_d[i] = hd * hd * a2 * r2;
      l2_d[i] = a2 * r2;
    }
    const auto integral = [&c](const Eigen::ArrayXd& d) {
      return integrate_dr(c.grid, d) + head_correction(c.grid, d);
    };
    out.lhs = integral(lhs_d);
    out.rhs = integral(rhs_d) + std::sqrt(p.mass * p.mass + p.eps * p.eps) *
                                    std::sqrt(integral(cross_d)) * std::sqrt(integral(l2_d));
    return out;
  };
  InequalityReport rep;
  rep.id = InequalityId::GENERAL_HIP;
  rep.mass = p.mass;
  rep.eps = p.eps;
  rep.kappa = ch.kappa;
  rep.path = "radial-channel";
  const auto sides = eval(ch, pot);
  rep.lhs = sides.lhs;
  rep.rhs = sides.rhs;
  rep.finalize();
  return rep;
}

}  // namespace hardydirac

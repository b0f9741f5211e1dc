#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardydirac/operators.hpp"

using namespace hardydirac;

TEST_CASE("spherical harmonics: known values and orthonormality") {
  // Y00, Y10, Y11 against their closed forms
  const double ct = 0.3, phi = 1.1;
  const double st = std::sqrt(1.0 - ct * ct);
  CHECK(std::abs(spherical_harmonic(0, 0, ct, phi) - Complex(std::sqrt(1.0 / (4 * M_PI)), 0)) <=
        1e-14);
  CHECK(std::abs(spherical_harmonic(1, 0, ct, phi) -
                 Complex(std::sqrt(3.0 / (4 * M_PI)) * ct, 0)) <= 1e-14);
  const Complex y11 = -std::sqrt(3.0 / (8 * M_PI)) * st * std::polar(1.0, phi);
  CHECK(std::abs(spherical_harmonic(1, 1, ct, phi) - y11) <= 1e-14);
  CHECK(std::abs(spherical_harmonic(1, -1, ct, phi) - Complex(-1.0, 0.0) * std::conj(y11)) <=
        1e-14);

  const SphereQuadrature quad(8);
  const int nt = static_cast<int>(quad.cos_theta.size());
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = l1; l2 <= 4; ++l2) {
        Complex acc = 0.0;
        for (int a = 0; a < nt; ++a)
          for (int b = 0; b < quad.n_phi; ++b)
            acc += quad.weight(a) * spherical_harmonic(l1, m1, quad.cos_theta[a], quad.phi(b)) *
                   std::conj(spherical_harmonic(l2, m1, quad.cos_theta[a], quad.phi(b)));
        const double expect = (l1 == l2) ? 1.0 : 0.0;
        CHECK(std::abs(acc - expect) <= 1e-12);
      }
}

TEST_CASE("spherical spinors: orthonormality and sigma.x_hat Omega_k = -Omega_{-k}") {
  const SphereQuadrature quad(8);
  const int nt = static_cast<int>(quad.cos_theta.size());
  for (int kappa : {-3, -2, -1, 1, 2, 3}) {
    for (int two_mj = -(2 * std::abs(kappa) - 1); two_mj <= 2 * std::abs(kappa) - 1; two_mj += 2) {
      Complex nrm = 0.0;
      double max_dev = 0.0;
      for (int a = 0; a < nt; ++a)
        for (int b = 0; b < quad.n_phi; ++b) {
          const double ct = quad.cos_theta[a], ph = quad.phi(b);
          const Vec2c om = spherical_spinor(kappa, two_mj, ct, ph);
          nrm += quad.weight(a) * om.squaredNorm();
          const double st = std::sqrt(1.0 - ct * ct);
          const Vec3 xhat(st * std::cos(ph), st * std::sin(ph), ct);
          const Vec2c lhs = contract_sigma(xhat) * om;
          const Vec2c rhs = -spherical_spinor(-kappa, two_mj, ct, ph);
          max_dev = std::max(max_dev, (lhs - rhs).norm());
        }
      CHECK(std::abs(nrm - 1.0) <= 1e-12);
      CHECK(max_dev <= 1e-13);
    }
  }
}

TEST_CASE("projector algebra on sphere-sampled fields") {
  const RadialGrid rg(1e-2, 12.0, 96);
  const int l_max = 8;

  // a mixed test field: radial part + kappa = +1 part + an l = 2 piece
  const auto fn = [](double r, double ct, double ph) -> Vec2c {
    const Vec2c radial = std::exp(-r * r) * Vec2c(1.0, 0.5);
    const Vec2c om1 = spherical_spinor(1, 1, ct, ph);
    const Vec2c y2m = Vec2c(spherical_harmonic(2, 1, ct, ph), spherical_harmonic(2, -2, ct, ph));
    return radial + r * std::exp(-r) * om1 + 0.3 * r * r * std::exp(-r) * y2m;
  };
  const SphereSampledField field = SphereSampledField::from_function(rg, l_max, fn);

  const ProjectionResult plus = project_pm(field, +1, l_max);
  const ProjectionResult minus = project_pm(field, -1, l_max);
  CHECK(plus.truncation_fraction <= 1e-10);  // the field lives below l_max

  // P+ + P- = identity on the spanned space
  double dev = 0.0;
  for (Eigen::Index c = 0; c < field.values.cols(); ++c)
    dev = std::max(dev, (plus.field.values.col(c) + minus.field.values.col(c) -
                         field.values.col(c))
                            .norm());
  CHECK(dev <= 1e-10);

  // P+ P- = 0 and P+^2 = P+
  const ProjectionResult pm = project_pm(minus.field, +1, l_max);
  CHECK(std::sqrt(norm_sq(pm.field)) <= 1e-10 * std::sqrt(norm_sq(field)));
  const ProjectionResult pp = project_pm(plus.field, +1, l_max);
  CHECK((pp.field.values - plus.field.values).norm() <= 1e-10 * plus.field.values.norm());
}

TEST_CASE("radial fields project entirely onto P+, Omega_{+1} fields onto P-") {
  const RadialGrid rg(1e-2, 12.0, 64);
  const int l_max = 6;
  const SphereSampledField radial = SphereSampledField::from_function(
      rg, l_max, [](double r, double, double) { return Vec2c(std::exp(-r), 0.3 * std::exp(-r)); });
  const ProjectionResult rp = project_pm(radial, +1, l_max);
  const ProjectionResult rm = project_pm(radial, -1, l_max);
  CHECK(norm_sq(rm.field) <= 1e-20 * norm_sq(radial));
  CHECK(std::abs(norm_sq(rp.field) - norm_sq(radial)) <= 1e-10 * norm_sq(radial));

  const SphereSampledField om1 = SphereSampledField::from_function(
      rg, l_max,
      [](double r, double ct, double ph) { return Vec2c(r * std::exp(-r) * spherical_spinor(1, -1, ct, ph)); });
  const ProjectionResult op = project_pm(om1, +1, l_max);
  const ProjectionResult om = project_pm(om1, -1, l_max);
  CHECK(norm_sq(op.field) <= 1e-20 * norm_sq(om1));
  CHECK(std::abs(norm_sq(om.field) - norm_sq(om1)) <= 1e-10 * norm_sq(om1));
}

TEST_CASE("channel H0 cross-validates against the Cartesian spectral path") {
  const CartesianGrid g(6.0, 48);
  const RadialGrid rg = default_radial_grid();
  const double m = 0.8;
  for (int kappa : {-1, 1}) {
    const int lu = ell_of_kappa(kappa), ld = ell_of_kappa(-kappa);
    const auto fp = [&](double r) { return Complex(std::pow(r, lu) * std::exp(-r * r), 0.0); };
    const auto gp = [&](double r) { return Complex(0.7 * std::pow(r, ld) * std::exp(-r * r), 0.0); };

    const RadialChannel ch = RadialChannel::from_profiles(kappa, rg, fp, gp);
    const RadialChannel hch = apply_free_dirac(ch, m);

    const SpinorField psi = embed_channel(g, kappa, 1, fp, gp);
    const SpinorField hpsi = apply_free_dirac(psi, m);

    // compare the channel result embedded back on the Cartesian grid
    // (profiles of H0 psi interpolated from the log grid)
    const auto interp = [&](const RadialValues& v) {
      return [&rg, v](double r) { return interp_log_cubic(rg, v, r); };
    };
    const SpinorField hpsi_chan = embed_channel(g, kappa, 1, interp(hch.f), interp(hch.g));
    CHECK(norm(hpsi_chan - hpsi) <= 1e-5 * norm(hpsi));
  }
}

TEST_CASE("channel free resolvent round-trips and matches the Cartesian multiplier") {
  const RadialGrid rg = default_radial_grid();
  const double m = 0.5, eps = 1.0;
  const int sign = -1;
  const RadialChannel rhs = RadialChannel::from_profiles(
      -1, rg, [](double r) { return Complex(std::exp(-r * r), 0.0); },
      [](double r) { return Complex(0.5 * r * std::exp(-r * r), 0.0); });

  const RadialChannel sol = apply_free_resolvent(rhs, m, eps, sign);
  const RadialChannel back = apply_shifted_dirac(sol, m, eps, sign);
  RadialChannel diff(-1, rg);
  diff.f = back.f - rhs.f;
  diff.g = back.g - rhs.g;
  CHECK(std::sqrt(norm_sq(diff)) <= 2e-5 * std::sqrt(norm_sq(rhs)));

  // cross-validate against the Cartesian Fourier multiplier
  const CartesianGrid g(8.0, 48);
  const SpinorField rhs_cart = embed_channel(
      g, -1, 1, [](double r) { return Complex(std::exp(-r * r), 0.0); },
      [](double r) { return Complex(0.5 * r * std::exp(-r * r), 0.0); });
  const SpinorField sol_cart = apply_free_resolvent(rhs_cart, FreeDiracParams(m, eps, sign));
  const auto interp = [&](const RadialValues& v) {
    return [&rg, v](double r) { return interp_log_cubic(rg, v, r); };
  };
  const SpinorField sol_chan = embed_channel(g, -1, 1, interp(sol.f), interp(sol.g));
  CHECK(norm(sol_chan - sol_cart) <= 1e-3 * norm(sol_cart));
}

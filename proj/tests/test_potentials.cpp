#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardydirac/potentials.hpp"
#include "hardydirac/spherical.hpp"

using namespace hardydirac;

namespace {

Vec3 random_point(Xoshiro256& rng, double scale = 5.0) {
  return Vec3(scale * (rng.next_double() - 0.5), scale * (rng.next_double() - 0.5),
              scale * (rng.next_double() - 0.5));
}

}  // namespace

TEST_CASE("coulomb potential: bound and constancy of |x| ||V||") {
  const MatrixPotential p = coulomb(0.5);
  CHECK(p.singularity_bound == 0.5);
  CHECK(p.satisfies_condition());

  Xoshiro256 rng(77);
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = random_point(rng);
    const Mat4 v = p.evaluate(x);
    CHECK(hermiticity_defect(v) <= 1e-12);
    CHECK(x.norm() * operator_norm(v) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("hermiticity holds on a large random sample") {
  const MatrixPotential p = remark14_family(0.4, 1.3, 0.7);
  Xoshiro256 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i)
    worst = std::max(worst, hermiticity_defect(p.evaluate(random_point(rng))));
  CHECK(worst <= 1e-12);
}

TEST_CASE("electromagnetic potentials") {
  const CartesianGrid g(8.0, 16);
  const auto samples = bound_sample_points(g);

  const MatrixPotential p0 =
      electromagnetic(0.3, [](const Vec3&) { return Vec3::Zero().eval(); }, samples);
  CHECK(p0.singularity_bound == doctest::Approx(0.3).epsilon(1e-12));

  // A(x) = 0.4 x / |x|^2: |x| ||V|| = |x| |A| = 0.4  (||sigma.u|| = |u|)
  const MatrixPotential p1 = electromagnetic(
      0.0, [](const Vec3& x) { return Vec3(0.4 * x / x.squaredNorm()); }, samples);
  CHECK(p1.singularity_bound == doctest::Approx(0.4).epsilon(1e-10));

  Xoshiro256 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x = random_point(rng);
    CHECK(x.norm() * operator_norm(p1.evaluate(x)) == doctest::Approx(0.4).epsilon(1e-10));
  }
}

TEST_CASE("remark14 family: sharp cases and the closed-form norm") {
  // c = 0 (b = -i): |x| ||V|| identically 1
  const MatrixPotential sharp = remark14_family(0.0, 1.0, 0.0);
  CHECK(sharp.singularity_bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(sharp.satisfies_condition());
  Xoshiro256 rng(19);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = random_point(rng);
    CHECK(x.norm() * operator_norm(sharp.evaluate(x)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // c = 1, eps -> 0 with m > 0: b = 0 and V = I4 / |x|
  const MatrixPotential identity_pot = remark14_family(1.0, 0.0, 1.0);
  CHECK(identity_pot.singularity_bound == doctest::Approx(1.0).epsilon(1e-14));
  const Vec3 x(0.3, -1.2, 0.4);
  CHECK((identity_pot.evaluate(x) - Mat4(Mat4::Identity() / x.norm())).norm() <= 1e-14);

  // c = 0.3, eps = 1, m = 0: bound = 0.3 + |0.3 - i| = 0.3 + sqrt(1.09)
  const MatrixPotential probe = remark14_family(0.3, 1.0, 0.0);
  CHECK(probe.singularity_bound == doctest::Approx(0.3 + std::sqrt(1.09)).epsilon(1e-14));
  for (int i = 0; i < 50; ++i) {
    const Vec3 y = random_point(rng);
    CHECK(y.norm() * operator_norm(probe.evaluate(y)) ==
          doctest::Approx(0.3 + std::sqrt(1.09)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(remark14_family(0.5, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("channel form of the potentials matches the dense evaluator") {
  const RadialGrid rg(1e-3, 20.0, 128);
  for (const MatrixPotential& pot :
       {coulomb(0.7), remark14_family(0.4, 1.0, 0.5),
        radial_scalar([](double r) { return 1.0 / (r * (1.0 + r)); }, 1.0)}) {
    RadialChannel ch = RadialChannel::from_profiles(
        -1, rg, [](double r) { return Complex(std::exp(-r), 0.1); },
        [](double r) { return Complex(0.3 * r * std::exp(-r), -0.2); });
    const RadialChannel vch = apply_potential(pot, ch);

    // dense check at a few radii along a fixed direction
    for (int i : {0, 40, 90}) {
      const double r = rg.r(i);
      const Vec3 x = r * Vec3(0.0, 0.0, 1.0);
      const Mat4 vm = pot.evaluate(x);
      // at x = r e_z: Omega_{-1,+1/2} = (1,0)/sqrt(4pi), Omega_{+1,+1/2} = -(0,... see below
      const Vec2c om_m1 = spherical_spinor(-1, 1, 1.0, 0.0);
      const Vec2c om_p1 = spherical_spinor(1, 1, 1.0, 0.0);
      Vec4c psi;
      psi << ch.f[i] * om_m1[0], ch.f[i] * om_m1[1], kImag * ch.g[i] * om_p1[0],
          kImag * ch.g[i] * om_p1[1];
      const Vec4c vpsi = vm * psi;
      Vec4c vpsi_chan;
      vpsi_chan << vch.f[i] * om_m1[0], vch.f[i] * om_m1[1], kImag * vch.g[i] * om_p1[0],
          kImag * vch.g[i] * om_p1[1];
      CHECK((vpsi - vpsi_chan).norm() <= 1e-12 * vpsi.norm());
    }
  }
}

TEST_CASE("h+ and h- for V = 1/r are both 1/2") {
  const RadialGrid rg = default_radial_grid();
  const RadialScalarPotential pot = compute_h_plus_minus(rg, [](double r) { return 1.0 / r; });
  double dev_p = 0.0, dev_m = 0.0;
  for (int i = 4; i < rg.size() - 4; ++i) {
    dev_p = std::max(dev_p, std::abs(pot.h_plus[i] - 0.5));
    dev_m = std::max(dev_m, std::abs(pot.h_minus[i] - 0.5));
  }
  CHECK(dev_p <= 1e-8);
  CHECK(dev_m <= 1e-8);
  CHECK(pot.h_plus_sup == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(pot.h_minus_sup == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("h+ and h- vanish for V = 0") {
  const RadialGrid rg(1e-3, 10.0, 128);
  const RadialScalarPotential pot = compute_h_plus_minus(rg, [](double) { return 0.0; });
  CHECK(pot.h_plus.abs().maxCoeff() == 0.0);
  CHECK(pot.h_minus.abs().maxCoeff() == 0.0);
}

TEST_CASE("h+ for V = 1/(r(1+r)) matches the symbolic antiderivative") {
  // Int_0^r t/(1+t) dt = r - log(1+r), so h+ = (r - log(1+r))/r^2 -> 1/2;
  // Int_r^inf dt/(t^3(1+t)) = 1/(2r^2) - 1/r - log(r/(1+r)), so
  // h- = 1/2 - r + r^2 log((1+r)/r).
  const RadialGrid rg = default_radial_grid();
  const RadialScalarPotential pot =
      compute_h_plus_minus(rg, [](double r) { return 1.0 / (r * (1.0 + r)); });
  double worst_p = 0.0, worst_m = 0.0;
  for (int i = 8; i < rg.size() - 8; ++i) {
    const double r = rg.r(i);
    const double hp = (r - std::log1p(r)) / (r * r);
    const double hm = 0.5 - r + r * r * std::log((1.0 + r) / r);
    worst_p = std::max(worst_p, std::abs(pot.h_plus[i] - hp) / hp);
    worst_m = std::max(worst_m, std::abs(pot.h_minus[i] - hm) / hm);
  }
  CHECK(worst_p <= 1e-6);
  CHECK(worst_m <= 1e-6);
  CHECK(pot.h_plus[0] == doctest::Approx(0.5).epsilon(1e-4));  // h+(0+) = 1/2
}

TEST_CASE("h ODE consistency: 2h+/r + h+' = V = 2h-/r - h-'") {
  const RadialGrid rg = default_radial_grid();
  for (const auto& v : {std::function<double(double)>([](double r) { return 1.0 / r; }),
                        std::function<double(double)>([](double r) { return 1.0 / (r * (1.0 + r)); }),
                        std::function<double(double)>([](double r) { return std::exp(-r); })}) {
    const RadialScalarPotential pot = compute_h_plus_minus(rg, v);
    const auto [rp, rm] = h_ode_residuals(pot);
    CHECK(rp <= 1e-5);
    CHECK(rm <= 1e-5);
  }
}

TEST_CASE("divergent tails are refused with the offending integral named") {
  const RadialGrid rg(1e-3, 10.0, 128);
  CHECK_THROWS_WITH_AS(compute_h_plus_minus(rg, [](double r) { return std::pow(r, -3.2); }),
                       doctest::Contains("h+"), InvalidArgument);
  CHECK_THROWS_WITH_AS(compute_h_plus_minus(rg, [](double r) { return r * r; }),
                       doctest::Contains("h-"), InvalidArgument);
}

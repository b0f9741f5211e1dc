#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardydirac/rng.hpp"
#include "hardydirac/spinor_algebra.hpp"

using namespace hardydirac;

namespace {

Vec3 random_unit(Xoshiro256& rng) {
  Vec3 v(rng.next_normal(), rng.next_normal(), rng.next_normal());
  return v.normalized();
}

// Dense eigensolve, kept free of the library entry point it checks.
double eig_norm_oracle(const Mat4& m) {
  Eigen::ComplexEigenSolver<Mat4> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pauli and dirac matrices match their displayed forms") {
  CHECK(pauli(3)(0, 0) == Complex(1, 0));
  CHECK(pauli(3)(1, 1) == Complex(-1, 0));
  CHECK(pauli(3)(0, 1) == Complex(0, 0));
  CHECK(pauli(2)(0, 1) == Complex(0, -1));
  CHECK(pauli(2)(1, 0) == Complex(0, 1));
  CHECK(pauli(1)(0, 1) == Complex(1, 0));

  const Mat4 beta = dirac_beta();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex expect = (i == j) ? Complex(i < 2 ? 1 : -1, 0) : Complex(0, 0);
      CHECK(beta(i, j) == expect);
    }

  CHECK_THROWS_AS(pauli(0), InvalidArgument);
  CHECK_THROWS_AS(dirac_alpha(4), InvalidArgument);
}

TEST_CASE("sigma product identity sigma_k sigma_l = delta + i eps sigma_m, exact") {
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) {
      Mat2 expect = Mat2::Zero();
      if (k == l) {
        expect = Mat2::Identity();
      } else {
        // eps_{klm}: remaining index and its parity
        const int m = 6 - k - l;
        const double sign = ((k == 1 && l == 2) || (k == 2 && l == 3) || (k == 3 && l == 1))
                                ? 1.0
                                : -1.0;
        expect = kImag * sign * pauli(m);
      }
      CHECK((pauli(k) * pauli(l) - expect).norm() == 0.0);
    }
}

TEST_CASE("dirac anticommutation relations hold to machine epsilon") {
  for (int k = 1; k <= 3; ++k) {
    for (int l = 1; l <= 3; ++l) {
      const Mat4 anti = dirac_alpha(k) * dirac_alpha(l) + dirac_alpha(l) * dirac_alpha(k);
      const Mat4 expect = (k == l) ? Mat4(2.0 * Mat4::Identity()) : Mat4(Mat4::Zero());
      CHECK((anti - expect).norm() <= 1e-15);
    }
    CHECK((dirac_alpha(k) * dirac_beta() + dirac_beta() * dirac_alpha(k)).norm() == 0.0);
  }
  CHECK((dirac_beta() * dirac_beta() - Mat4::Identity()).norm() == 0.0);
  CHECK((dirac_alpha(1) * dirac_alpha(1) - Mat4::Identity()).norm() == 0.0);
}

TEST_CASE("contractions") {
  CHECK((contract_sigma(Vec3(0, 0, 1)) - pauli(3)).norm() == 0.0);

  Xoshiro256 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 u = random_unit(rng);
    const Mat2 s = contract_sigma(u);
    CHECK((s * s - Mat2::Identity()).norm() <= 1e-14);  // (sigma.u)^2 = I
    CHECK(hermiticity_defect(s) <= 1e-15);
  }

  const Mat4 a1 = contract_alpha(Vec3(1, 0, 0));
  CHECK((a1 * dirac_beta() + dirac_beta() * a1).norm() == 0.0);
}

TEST_CASE("operator_norm basics") {
  CHECK(operator_norm(Mat4(0.7 * Mat4::Identity())) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(operator_norm(dirac_beta()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(Mat2(pauli(2))) == doctest::Approx(1.0).epsilon(1e-14));

  Mat4 bad = Mat4::Identity();
  bad(0, 1) = Complex(0.5, 0.5);
  CHECK_THROWS_AS(operator_norm(bad), InvalidArgument);
}

TEST_CASE("operator_norm of the remark-1.4 block shape equals max|c +- |b||") {
  Xoshiro256 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 xhat = random_unit(rng);
    const double c = 2.0 * rng.next_double() - 1.0;
    const Complex b(rng.next_normal(), rng.next_normal());
    const Mat2 s = contract_sigma(xhat);
    Mat4 m = Mat4::Zero();
    m.block<2, 2>(0, 0) = c * Mat2::Identity();
    m.block<2, 2>(2, 2) = c * Mat2::Identity();
    m.block<2, 2>(0, 2) = std::conj(b) * s;
    m.block<2, 2>(2, 0) = b * s;
    const double expect = std::max(std::abs(c + std::abs(b)), std::abs(c - std::abs(b)));
    CHECK(operator_norm(m) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(eig_norm_oracle(m) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("operator_norm is invariant under unitary conjugation") {
  Xoshiro256 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    Mat4 h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) h(i, j) = Complex(rng.next_normal(), rng.next_normal());
    h = Mat4((h + h.adjoint()).eval() / 2.0);

    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.next_normal(), rng.next_normal());
    const Mat4 q = Eigen::HouseholderQR<Mat4>(g).householderQ();

    const double a = operator_norm(h);
    const double b = operator_norm(Mat4(q * h * q.adjoint()), 1e-10);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}

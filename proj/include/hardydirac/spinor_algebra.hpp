#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hardydirac/errors.hpp"

namespace hardydirac {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kImag{0.0, 1.0};

/// Relative Hermiticity tolerance used by operator_norm and the potential library.
inline constexpr double kHermitianTol = 1e-12;

inline const Mat2& pauli(int k) {
  static const Mat2 s1 = (Mat2() << 0, 1, 1, 0).finished();
  static const Mat2 s2 = (Mat2() << 0, -kImag, kImag, 0).finished();
  static const Mat2 s3 = (Mat2() << 1, 0, 0, -1).finished();
  switch (k) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw InvalidArgument("pauli: index must be 1, 2 or 3");
  }
}

inline Mat4 block_offdiag(const Mat2& upper_right, const Mat2& lower_left) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 2) = upper_right;
  m.block<2, 2>(2, 0) = lower_left;
  return m;
}

inline const Mat4& dirac_alpha(int k) {
  static const Mat4 a1 = block_offdiag(pauli(1), pauli(1));
  static const Mat4 a2 = block_offdiag(pauli(2), pauli(2));
  static const Mat4 a3 = block_offdiag(pauli(3), pauli(3));
  switch (k) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    default: throw InvalidArgument("dirac_alpha: index must be 1, 2 or 3");
  }
}

inline const Mat4& dirac_beta() {
  static const Mat4 b = (Eigen::Vector4d() << 1, 1, -1, -1).finished().asDiagonal().toDenseMatrix().cast<Complex>();
  return b;
}

/// sigma . v for a real 3-vector v. Hermitian by construction.
inline Mat2 contract_sigma(const Vec3& v) {
  return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

/// sigma . v for a complex 3-vector (used with spectral gradients); not Hermitian in general.
inline Mat2 contract_sigma(const Eigen::Vector3cd& v) {
  return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

inline Mat4 contract_alpha(const Vec3& v) {
  return v[0] * dirac_alpha(1) + v[1] * dirac_alpha(2) + v[2] * dirac_alpha(3);
}

inline Mat4 contract_alpha(const Eigen::Vector3cd& v) {
  return v[0] * dirac_alpha(1) + v[1] * dirac_alpha(2) + v[2] * dirac_alpha(3);
}

template <typename Mat>
double hermiticity_defect(const Mat& m) {
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / scale;
}

template <typename Mat>
bool is_hermitian(const Mat& m, double tol = kHermitianTol) {
  return hermiticity_defect(m) <= tol;
}

/// Largest absolute eigenvalue of a Hermitian matrix; the pointwise |V(x)| of the paper.
template <typename Mat>
double operator_norm(const Mat& m, double tol = kHermitianTol) {
  if (!is_hermitian(m, tol))
    throw InvalidArgument("operator_norm: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace hardydirac

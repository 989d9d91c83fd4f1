#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dimersim {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using SuperMatrix = Eigen::Matrix<Complex, 16, 16>;
using SuperVector = Eigen::Matrix<Complex, 16, 1>;

// Column-stacking vectorization. With this convention
// vec(A rho B) = kron(B^T, A) . vec(rho), where kron is defined below.
inline SuperVector vec(const Matrix4& m) {
  return Eigen::Map<const SuperVector>(m.data());
}

inline Matrix4 unvec(const SuperVector& v) {
  return Eigen::Map<const Matrix4>(v.data());
}

// kron(M, N)[4i+k, 4j+l] = M(i,j) N(k,l)
inline SuperMatrix kron(const Matrix4& m, const Matrix4& n) {
  SuperMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = m(i, j) * n;
  return out;
}

// vec(A rho) = left_mult(A) vec(rho)
inline SuperMatrix left_mult(const Matrix4& a) {
  return kron(Matrix4::Identity(), a);
}

// vec(rho B) = right_mult(B) vec(rho)
inline SuperMatrix right_mult(const Matrix4& b) {
  return kron(b.transpose(), Matrix4::Identity());
}

}  // namespace dimersim

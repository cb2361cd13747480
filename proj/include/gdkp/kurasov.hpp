#pragma once

#include <Eigen/Dense>

#include "gdkp/coupling.hpp"
#include "gdkp/errors.hpp"

namespace gdkp {

// Strength vector g of the delta-potential picture. `singular` marks couplings
// where -sigma_x U has eigenvalue 1 and g has infinite entries.
struct Strengths {
  Eigen::Vector4d g = Eigen::Vector4d::Zero();
  bool singular = false;
};

Strengths coupling_to_strengths(const Coupling& c, double tol = 1e-12);

// 4 - g0^2 + g1^2 + g2^2 + g3^2
double kurasov_delta(const Eigen::Vector4d& g);

Coupling strengths_to_coupling(const Eigen::Vector4d& g, double tol = 1e-12);

template <typename Scalar = double>
Matrix2c<Scalar> delta_matrix(const Eigen::Matrix<Scalar, 4, 1>& g) {
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> v;
  v << C(g[0] + g[3], 0), C(g[1], -g[2]), C(g[1], g[2]), C(g[0] - g[3], 0);
  return v;
}

// (V - iI)(V + iI)^{-1}
template <typename Derived>
Matrix2c<typename Derived::RealScalar> cayley(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::RealScalar;
  const Matrix2c<Scalar> id = Matrix2c<Scalar>::Identity();
  const std::complex<Scalar> i(0, 1);
  return (v - i * id) * (v + i * id).inverse();
}

// i (I - U)^{-1} (I + U)
template <typename Derived>
Matrix2c<typename Derived::RealScalar> inverse_cayley(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::RealScalar;
  const Matrix2c<Scalar> id = Matrix2c<Scalar>::Identity();
  const std::complex<Scalar> i(0, 1);
  return i * (id - u).inverse() * (id + u);
}

void require_permeable(const Coupling& c, double tol = 1e-12);

// Junction matrix D_U with Psi(0+) = D_U Psi(0-), defined for permeable U.
template <typename Scalar = double>
Matrix2c<Scalar> interaction_matrix(const Coupling& c) {
  require_permeable(c);
  using C = std::complex<Scalar>;
  const Scalar se = static_cast<Scalar>(std::sin(c.eta));
  const Scalar ce = static_cast<Scalar>(std::cos(c.eta));
  const Scalar m0 = static_cast<Scalar>(c.m0()), m3 = static_cast<Scalar>(c.m3());
  Matrix2c<Scalar> d;
  d << C(-se - m3, 0), C(0, ce + m0), C(0, ce - m0), C(-se + m3, 0);
  return d / C(static_cast<Scalar>(c.m1()), -static_cast<Scalar>(c.m2()));
}

}  // namespace gdkp

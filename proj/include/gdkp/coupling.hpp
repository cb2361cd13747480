#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace gdkp {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using Matrix2cd = Matrix2c<double>;
using Vector2cd = Vector2c<double>;

// A point of U(2): U = e^{i eta} [[m0 + i m3, m2 + i m1], [-m2 + i m1, m0 - i m3]]
// with |m| = 1 and eta in [0, pi).
struct Coupling {
  double eta = 0.0;
  Eigen::Vector4d m = Eigen::Vector4d::UnitX();

  double m0() const { return m[0]; }
  double m1() const { return m[1]; }
  double m2() const { return m[2]; }
  double m3() const { return m[3]; }
};

// Builds a canonical coupling. The norm of m must be within 1e-9 of one; eta
// is reduced into [0, pi), flipping m when the reduction crosses pi.
Coupling make_coupling(double eta, const Eigen::Vector4d& m);

// Extracts (eta, m) from a unitary matrix via det U = e^{2 i eta}.
Coupling coupling_from_matrix(const Matrix2cd& u, double tol = 1e-10);

// True when both couplings describe the same matrix.
bool same_coupling(const Coupling& a, const Coupling& b, double tol = 1e-12);

template <typename Scalar = double>
Matrix2c<Scalar> coupling_matrix(const Coupling& c) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar m0 = static_cast<Scalar>(c.m0()), m1 = static_cast<Scalar>(c.m1());
  const Scalar m2 = static_cast<Scalar>(c.m2()), m3 = static_cast<Scalar>(c.m3());
  Matrix2c<Scalar> u;
  u << C(m0, m3), C(m2, m1), C(-m2, m1), C(m0, -m3);
  return std::exp(i * static_cast<Scalar>(c.eta)) * u;
}

// Named families: U_C(theta) (class D), U_CS(theta) (class BDI) and
// U_S(theta, m2) (class AIII). theta must lie in [-pi, pi).
Coupling family_D(double theta);
Coupling family_BDI(double theta);
Coupling family_AIII(double theta, double m2);

enum class Family { D, BDI, AIII };

Family parse_family(const std::string& name);
std::string to_string(Family family);

// Family member for (theta, m2); m2 is ignored unless the family is AIII.
Coupling family_coupling(Family family, double theta, double m2 = 0.0);

struct SymmetryClass {
  std::string label;  // one of A, AI, AIII, D, BDI
  bool has_T = false;
  bool has_C = false;
  bool has_S = false;
};

SymmetryClass classify_symmetry(const Coupling& c, double tol = 1e-10);

enum class Permeability { Permeable, Impermeable };

Permeability permeability(const Coupling& c, double tol = 1e-12);
std::string to_string(Permeability p);

// sqrt(m1^2 + m2^2), the modulus that controls current across a junction.
inline double permeable_radius(const Coupling& c) {
  return std::hypot(c.m1(), c.m2());
}

}  // namespace gdkp

#include "gdkp/coupling.hpp"

#include <cmath>

#include "gdkp/errors.hpp"
#include "gdkp/numeric.hpp"

namespace gdkp {

namespace {

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta < -pi || theta >= pi) {
    throw Error(ErrorCode::InvalidParameter, "theta out of range");
  }
}

}  // namespace

Coupling make_coupling(double eta, const Eigen::Vector4d& m) {
  if (!std::isfinite(eta) || !m.allFinite()) {
    throw Error(ErrorCode::InvalidParameter, "non-finite coupling parameters");
  }
  const double norm = m.norm();
  if (norm == 0.0) {
    throw Error(ErrorCode::InvalidParameter, "zero-norm coupling vector m");
  }
  if (std::abs(norm - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidParameter, "coupling vector m is not a unit vector");
  }
  Coupling c;
  c.m = m / norm;
  // e^{i(eta + pi)} (m-form) = e^{i eta} (-m-form)
  double e = std::fmod(eta, two_pi);
  if (e < 0.0) e += two_pi;
  while (e >= pi) {
    e -= pi;
    c.m = -c.m;
  }
  c.eta = e;
  return c;
}

Coupling coupling_from_matrix(const Matrix2cd& u, double tol) {
  if (!u.allFinite()) {
    throw Error(ErrorCode::InvalidParameter, "non-finite matrix entries");
  }
  const double defect = (u * u.adjoint() - Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary");
  }
  const double eta = 0.5 * std::arg(u.determinant());
  const Matrix2cd v = std::exp(std::complex<double>(0, -eta)) * u;
  Eigen::Vector4d m;
  m[0] = 0.5 * (v(0, 0) + v(1, 1)).real();
  m[1] = 0.5 * (v(0, 1) + v(1, 0)).imag();
  m[2] = 0.5 * (v(0, 1) - v(1, 0)).real();
  m[3] = 0.5 * (v(0, 0) - v(1, 1)).imag();
  return make_coupling(eta, m);
}

bool same_coupling(const Coupling& a, const Coupling& b, double tol) {
  return (coupling_matrix(a) - coupling_matrix(b)).cwiseAbs().maxCoeff() <= tol;
}

Coupling family_D(double theta) {
  check_theta(theta);
  return make_coupling(0.0, Eigen::Vector4d(0.0, 0.0, std::sin(theta), std::cos(theta)));
}

Coupling family_BDI(double theta) {
  check_theta(theta);
  return make_coupling(pi / 2, Eigen::Vector4d(std::cos(theta), std::sin(theta), 0.0, 0.0));
}

Coupling family_AIII(double theta, double m2) {
  check_theta(theta);
  if (!std::isfinite(m2) || std::abs(m2) > 1.0) {
    throw Error(ErrorCode::InvalidParameter, "m2 out of range");
  }
  const double s = std::sqrt(1.0 - m2 * m2);
  return make_coupling(pi / 2,
                       Eigen::Vector4d(s * std::cos(theta), s * std::sin(theta), m2, 0.0));
}

Family parse_family(const std::string& name) {
  if (name == "D") return Family::D;
  if (name == "BDI") return Family::BDI;
  if (name == "AIII") return Family::AIII;
  throw Error(ErrorCode::InvalidParameter, "unknown family '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::D: return "D";
    case Family::BDI: return "BDI";
    case Family::AIII: return "AIII";
  }
  return "?";
}

Coupling family_coupling(Family family, double theta, double m2) {
  switch (family) {
    case Family::D: return family_D(theta);
    case Family::BDI: return family_BDI(theta);
    case Family::AIII: return family_AIII(theta, m2);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family");
}

SymmetryClass classify_symmetry(const Coupling& c, double tol) {
  auto zero = [tol](double x) { return std::abs(x) <= tol; };
  // eta is only defined mod pi, so values just below pi count as zero.
  const bool eta0 = std::min(c.eta, pi - c.eta) <= tol;
  const bool eta_half = std::abs(c.eta - pi / 2) <= tol;
  SymmetryClass s;
  s.has_T = zero(c.m2());
  s.has_C = (eta0 && zero(c.m0()) && zero(c.m1())) ||
            (eta_half && zero(c.m2()) && zero(c.m3()));
  s.has_S = (eta0 && zero(c.m0()) && zero(c.m1()) && zero(c.m2())) ||
            (eta_half && zero(c.m3()));
  if (s.has_T && s.has_C && s.has_S) {
    s.label = "BDI";
  } else if (s.has_C) {
    s.label = "D";
  } else if (s.has_S) {
    s.label = "AIII";
  } else if (s.has_T) {
    s.label = "AI";
  } else {
    s.label = "A";
  }
  return s;
}

Permeability permeability(const Coupling& c, double tol) {
  if (std::abs(c.m1()) < tol && std::abs(c.m2()) < tol) return Permeability::Impermeable;
  return Permeability::Permeable;
}

std::string to_string(Permeability p) {
  return p == Permeability::Permeable ? "Permeable" : "Impermeable";
}

}  // namespace gdkp

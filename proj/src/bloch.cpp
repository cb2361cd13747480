#include "gdkp/bloch.hpp"

#include <cmath>

#include "gdkp/errors.hpp"
#include "gdkp/numeric.hpp"
#include "gdkp/spectral.hpp"

namespace gdkp {

namespace {

using cd = std::complex<double>;
const cd I(0.0, 1.0);

// Kernel matrix M = A- - U A+ of the junction condition acting on (c+, c-).
Matrix2cd kernel_matrix(const Coupling& c, double k, cd q, cd r) {
  const cd em = std::exp(I * (k - q));
  const cd ep = std::exp(I * (k + q));
  Matrix2cd a_plus, a_minus;
  a_plus << 1.0 + r, 1.0 - r, (1.0 - r) * em, (1.0 + r) * ep;
  a_minus << 1.0 - r, 1.0 + r, (1.0 + r) * em, (1.0 - r) * ep;
  return a_minus - coupling_matrix(c) * a_plus;
}

// int_a^b e^{i beta x} dx
cd exp_integral(cd beta, double a, double b) {
  const double len = b - a;
  return len * std::exp(I * beta * (0.5 * (a + b))) * sinc(0.5 * beta * len);
}

void require_compatible(const BlochState& s1, const BlochState& s2) {
  if (s1.mass != s2.mass || !same_coupling(s1.coupling, s2.coupling, 0.0)) {
    throw Error(ErrorCode::MomentumMismatch, "states belong to different couplings or masses");
  }
}

}  // namespace

Vector2cd BlochState::evaluate(double x) const {
  // Reduce into (-1, 1) with Psi(x + 1) = e^{ik} Psi(x).
  double shift = 0.0;
  if (x >= 1.0 || x < -1.0) {
    shift = std::floor(0.5 * (x + 1.0)) * 2.0;
    x -= shift;
  }
  Vector2cd psi;
  if (x < 0.0) {
    psi = xi_plus * std::exp(I * q * x) + xi_minus * std::exp(-I * q * x);
  } else {
    psi = xi_plus * std::exp(I * (q * (x - 1.0) + k)) +
          xi_minus * std::exp(-I * (q * (x - 1.0) - k));
  }
  return std::exp(I * (k * shift)) * psi;
}

Vector2cd BlochState::zak_gauge(double x) const {
  return std::exp(-I * (k * x)) * evaluate(x);
}

BlochState bloch_state(const Coupling& c, double k, double eps, double m,
                       const BlochOptions& options) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameter, "mass must be positive");
  const double residual = spectral_value(c, k, eps, m);
  if (!(std::abs(residual) <= options.root_tol)) {
    throw Error(ErrorCode::NotAnEigenvalue, "energy is not a root of the spectral function");
  }
  BlochState s;
  s.coupling = c;
  s.mass = m;
  s.k = k;
  s.eps = eps;
  s.q = wavenumber(eps, m);
  if (std::abs(s.q) < options.edge_tol || std::abs(eps + m) < options.edge_tol) {
    throw Error(ErrorCode::BandEdge, "band-edge energy eps = +-m");
  }
  const cd r = s.q / (eps + m);
  const cd phase = std::exp(I * c.eta);
  const cd mix = I * c.m1() + c.m2();
  const cd y = phase * cd(c.m0(), c.m3());
  const cd x_plus = 1.0 - std::exp(I * (k + c.eta + s.q)) * mix;
  const cd x_minus = 1.0 - std::exp(I * (k + c.eta - s.q)) * mix;
  s.c_plus = (1.0 + r) * x_plus - (1.0 - r) * y;
  s.c_minus = -(1.0 - r) * x_minus + (1.0 + r) * y;
  if (std::norm(s.c_plus) + std::norm(s.c_minus) < options.vanish_tol) {
    const Matrix2cd mk = kernel_matrix(c, k, s.q, r);
    s.c_plus = mk(1, 1);
    s.c_minus = -mk(1, 0);
    s.fallback_row = true;
    if (std::norm(s.c_plus) + std::norm(s.c_minus) < options.vanish_tol) {
      throw Error(ErrorCode::GaugeSingular, "both kernel rows vanish");
    }
  }
  s.xi_plus = Vector2cd(s.c_plus, s.c_plus * r);
  s.xi_minus = Vector2cd(s.c_minus, -s.c_minus * r);
  return s;
}

Overlap zak_gauge_overlap(const BlochState& s1, const BlochState& s2) {
  require_compatible(s1, s2);
  const double dk = s2.k - s1.k;
  const std::array<const Vector2cd*, 2> x1{&s1.xi_plus, &s1.xi_minus};
  const std::array<const Vector2cd*, 2> x2{&s2.xi_plus, &s2.xi_minus};
  const std::array<double, 2> sign{1.0, -1.0};
  Overlap out;
  out.value = 0.0;
  int j = 0;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      const cd amp = x1[a]->dot(*x2[b]);
      const cd alpha = sign[b] * s2.q - sign[a] * std::conj(s1.q) - dk;
      out.contributions[j] = amp * std::exp(-0.5 * I * alpha) * sinc(0.5 * alpha);
      out.value += out.contributions[j];
      ++j;
    }
  }
  return out;
}

Overlap zak_gauge_overlap(const BlochState& s1, const BlochState& s2, int M) {
  if (M <= 0 || circular_distance(s2.k - s1.k, two_pi / M) > 1e-12) {
    throw Error(ErrorCode::MomentumMismatch, "momentum step differs from 2pi/M");
  }
  return zak_gauge_overlap(s1, s2);
}

std::complex<double> shifted_cell_overlap(const BlochState& s1, const BlochState& s2,
                                          double d) {
  require_compatible(s1, s2);
  const double shift = 0.5 - d;
  const double dk = s2.k - s1.k;
  const std::array<const Vector2cd*, 2> x1{&s1.xi_plus, &s1.xi_minus};
  const std::array<const Vector2cd*, 2> x2{&s2.xi_plus, &s2.xi_minus};
  const std::array<double, 2> sign{1.0, -1.0};
  // x = y + shift runs over [-d, 1 - d): the left branch on [-d, 0), the
  // right branch on [0, 1 - d), where it carries e^{i(k2 - k1)} e^{i gamma (x-1)}.
  cd total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cd amp = x1[a]->dot(*x2[b]);
      const cd gamma = sign[b] * s2.q - sign[a] * std::conj(s1.q);
      const cd left = exp_integral(gamma - dk, -d, 0.0);
      const cd right = std::exp(I * dk) * std::exp(-I * gamma) *
                       exp_integral(gamma - dk, 0.0, 1.0 - d);
      total += amp * (left + right);
    }
  }
  return std::exp(I * (dk * shift)) * total;
}

}  // namespace gdkp

#include "gdkp/kurasov.hpp"

#include <cmath>

#include "gdkp/numeric.hpp"

namespace gdkp {

Strengths coupling_to_strengths(const Coupling& c, double tol) {
  const double den = std::sin(c.eta) - c.m1();
  Strengths s;
  if (std::abs(den) <= tol) {
    s.singular = true;
    return s;
  }
  s.g = (2.0 / den) * Eigen::Vector4d(std::cos(c.eta), c.m2(), c.m3(), -c.m0());
  return s;
}

double kurasov_delta(const Eigen::Vector4d& g) {
  return 4.0 - g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
}

// With D = sin(eta) - m1 one has Delta = 8 sin(eta)/D and g0 = 2 cos(eta)/D,
// which fixes eta and D; the remaining components follow from g directly.
Coupling strengths_to_coupling(const Eigen::Vector4d& g, double tol) {
  if (!g.allFinite()) {
    throw Error(ErrorCode::InvalidParameter, "non-finite strengths");
  }
  const double delta = kurasov_delta(g);
  const double scale = std::max(1.0, g.squaredNorm());
  const bool g0_zero = std::abs(g[0]) <= tol;
  const bool delta_zero = std::abs(delta) <= tol * scale;

  if (!g0_zero && !delta_zero) {
    const double sgn = delta > 0.0 ? 1.0 : -1.0;
    const double eta = std::atan2(sgn * delta, sgn * 4.0 * g[0]);
    const Eigen::Vector4d m =
        Eigen::Vector4d(-4.0 * g[3], delta - 8.0, 4.0 * g[1], 4.0 * g[2]) /
        (sgn * std::sqrt(16.0 * g[0] * g[0] + delta * delta));
    return make_coupling(eta, m.normalized());
  }
  if (g0_zero) {
    const double v2 = g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
    if (delta < 4.0 - tol * scale) {
      throw Error(ErrorCode::NumericalDegeneracy, "strength branch dispatch inconsistent");
    }
    const Eigen::Vector4d m =
        Eigen::Vector4d(-4.0 * g[3], v2 - 4.0, 4.0 * g[1], 4.0 * g[2]) / (4.0 + v2);
    return make_coupling(pi / 2, m.normalized());
  }
  if (g[0] * g[0] < 4.0 - tol * scale) {
    throw Error(ErrorCode::NumericalDegeneracy, "strength branch dispatch inconsistent");
  }
  const Eigen::Vector4d m = Eigen::Vector4d(-g[3], -2.0, g[1], g[2]) / g[0];
  return make_coupling(0.0, m.normalized());
}

void require_permeable(const Coupling& c, double tol) {
  if (permeability(c, tol) == Permeability::Impermeable) {
    throw Error(ErrorCode::ImpermeableCoupling, "coupling is impermeable (m1 = m2 = 0)");
  }
}

}  // namespace gdkp

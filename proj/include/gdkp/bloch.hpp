#pragma once

#include <array>
#include <complex>

#include "gdkp/coupling.hpp"

namespace gdkp {

// Eigenspinor of the fiber operator at momentum k and energy eps:
//   x < 0: xi+ e^{iqx} + xi- e^{-iqx}
//   x > 0: xi+ e^{i[q(x-1)+k]} + xi- e^{-i[q(x-1)-k]}
// with xi+- = c+- (1, +-q/(eps+m)). Stored unnormalized.
struct BlochState {
  Coupling coupling;
  double mass = 1.0;
  double k = 0.0;
  double eps = 0.0;
  std::complex<double> q;
  std::complex<double> c_plus;
  std::complex<double> c_minus;
  Vector2cd xi_plus;
  Vector2cd xi_minus;
  // True when the coefficients come from the second kernel row.
  bool fallback_row = false;

  Vector2cd evaluate(double x) const;
  // u(x) = e^{-ikx} Psi(x), the Bloch-Floquet-Zak representative.
  Vector2cd zak_gauge(double x) const;
};

struct BlochOptions {
  double root_tol = 1e-9;    // |spectral_value| accepted at (k, eps)
  double edge_tol = 1e-10;   // |q| below which the state is a band-edge state
  double vanish_tol = 1e-20; // |c+|^2 + |c-|^2 below which a row is discarded
};

BlochState bloch_state(const Coupling& c, double k, double eps, double m,
                       const BlochOptions& options = {});

struct Overlap {
  std::complex<double> value;
  std::array<std::complex<double>, 4> contributions;
};

// Closed-form integral of u1^dagger u2 over the unit cell [-1/2, 1/2].
Overlap zak_gauge_overlap(const BlochState& s1, const BlochState& s2);

// Same, additionally requiring s2.k - s1.k = 2pi/M (mod 2pi).
Overlap zak_gauge_overlap(const BlochState& s1, const BlochState& s2, int M);

// Overlap of the Zak representatives after translating the cell by
// shift = 1/2 - d: e^{i dk shift} times the integral of e^{-i dk x}
// Psi1^dagger(x) Psi2(x) over x in [-d, 1 - d), evaluated piecewise in
// closed form.
std::complex<double> shifted_cell_overlap(const BlochState& s1, const BlochState& s2,
                                          double d);

}  // namespace gdkp

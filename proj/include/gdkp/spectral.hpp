#pragma once

#include <complex>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "gdkp/coupling.hpp"

namespace gdkp {

// q = e^{i arg(eps^2 - m^2)/2} sqrt|eps^2 - m^2|: real >= 0 outside the mass
// gap, positive imaginary inside it.
std::complex<double> wavenumber(double eps, double m);

// k-independent part of the spectral function:
// cos(q) sin(eta) + sinc(q) (eps cos(eta) - m m0).
double band_function(const Coupling& c, double eps, double m);

// d/d eps of band_function (and of spectral_value).
double band_function_derivative(const Coupling& c, double eps, double m);

// m1 cos k + m2 sin k + band_function(c, eps, m). Real for all real inputs.
double spectral_value(const Coupling& c, double k, double eps, double m);

// det(a I + b sigma_k - U) expanded as a^2 - b^2 + det U - a tr U + b tr(U sigma_k).
// The q/sin(q) structure of a and b is divided out, so the value is finite at
// eps = +-m. It equals 2 e^{i eta} spectral_value / (eps sinc q - i cos q).
std::complex<double> spectral_value_matrix_form(const Coupling& c, double k, double eps,
                                                double m);

struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  int below_band = 0;
  int above_band = 0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

struct BandTouching {
  double k = 0.0;
  double eps = 0.0;
};

struct BandOptions {
  int k_count = 128;
  // Energy window; NaN selects (-(n_max+1)pi - m, (n_max+1)pi + m).
  double eps_lo = std::numeric_limits<double>::quiet_NaN();
  double eps_hi = std::numeric_limits<double>::quiet_NaN();
  int n_max = 3;
  int eps_scan = 4000;
  double zero_tol = 1e-9;
  double touch_tol = 1e-12;
  unsigned workers = 1;
};

struct BandStructure {
  Coupling coupling;
  double mass = 1.0;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  std::vector<double> k_grid;
  std::map<int, std::vector<double>> bands;
  std::vector<Gap> gaps;
  std::vector<BandTouching> touchings;

  bool has_zero_band() const { return bands.count(0) > 0; }
  std::vector<int> labels() const;
  double band_min(int n) const;
  double band_max(int n) const;
  // Gap whose upper (lower) neighbour is band n, or nullptr.
  const Gap* gap_below(int n) const;
  const Gap* gap_above(int n) const;
};

std::pair<double, double> default_window(double m, int n_max);

// Roots of spectral_value at fixed k inside [lo, hi], sorted, with double
// roots (band touchings) listed twice.
std::vector<double> spectral_roots(const Coupling& c, double k, double m, double lo,
                                   double hi, int eps_scan = 4000, double touch_tol = 1e-12);

BandStructure band_structure(const Coupling& c, double m, const BandOptions& options = {});

// Single root of spectral_value at fixed k inside a bracket with a sign change.
double band_energy(const Coupling& c, double k, double m, double lo, double hi);

struct ZeroModeReport {
  int count = 0;
  std::vector<double> momenta;
  double G = 0.0;
  bool flat_zero_band = false;
};

ZeroModeReport zero_modes(const Coupling& c, double m, double tol = 1e-10);

struct SymmetryReport {
  SymmetryClass expected;
  double dev_T = 0.0;
  double dev_C = 0.0;
  double dev_S = 0.0;
  bool holds_T = false;
  bool holds_C = false;
  bool holds_S = false;
};

SymmetryReport check_spectral_symmetries(const BandStructure& bands, double tol = 1e-8,
                                         double symmetry_tol = 1e-10);

}  // namespace gdkp

#pragma once

#include <string>
#include <vector>

#include "gdkp/coupling.hpp"
#include "gdkp/spectral.hpp"

namespace gdkp {

struct ZakOptions {
  int M = 2048;
  // Offset added to every momentum of the loop grid.
  double k_shift = 0.0;
  unsigned workers = 1;
  // Coarse band structure used to label the band and locate its gaps.
  int label_k_count = 128;
  int eps_scan = 4000;
  double collapse_tol = 1e-10;
  bool retry = true;
  bool convergence = true;
};

struct ZakResult {
  double phase = 0.0;  // in [0, 2pi)
  int M = 0;
  int band = 0;
  double convergence = 0.0;  // circular distance between the M and M/2 loops
  bool flat_band = false;
  bool retried = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Discrete Wilson loop Z = -sum arg S_i over k_i = -pi + 2pi i/M, i = 0..M.
ZakResult zak_phase(const Coupling& c, double m, int band, const ZakOptions& options = {});

// As above, reusing a band structure for labels and gaps.
ZakResult zak_phase(const BandStructure& bands, int band, const ZakOptions& options = {});

// (phase - pi(1 - 2d)) mod 2pi
double translated_zak(double phase, double d);

// Wilson loop over representatives of the cell shifted by 1/2 - d.
ZakResult zak_phase_shifted_cell(const BandStructure& bands, int band, double d,
                                 const ZakOptions& options = {});

struct SweepPoint {
  double theta = 0.0;
  double m2 = 0.0;
};

// Distance from (theta, m2) to the nearest gap-closing locus of the family:
// |theta| = pi/2, |theta| = theta_m (BDI), sqrt(1 - m2^2) cos(theta) = tanh(m) (AIII).
// Infinite for class D.
double gap_closing_distance(Family family, const SweepPoint& p, double m);

struct ZakSweepOptions {
  ZakOptions zak;
  double margin = 0.05;
  bool unwrap = false;
  unsigned workers = 1;
};

struct ZakSweepRow {
  SweepPoint point;
  int band = 0;
  double phase = 0.0;
  double phase_unwrapped = 0.0;
  double convergence = 0.0;
  bool near_locus = false;
  bool flat_band = false;
  std::string error;
};

std::vector<ZakSweepRow> zak_sweep(Family family, const std::vector<SweepPoint>& grid,
                                   double m, const std::vector<int>& bands,
                                   const ZakSweepOptions& options = {});

}  // namespace gdkp

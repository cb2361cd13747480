#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gdkp/coupling.hpp"
#include "gdkp/numeric.hpp"
#include "gdkp/spectral.hpp"
#include "gdkp/zak.hpp"

namespace gdkp {

// Free propagator P(eps, d) = cos(qd) I + i d sinc(qd) Q(eps),
// Q(eps) = eps sigma_x + i m sigma_y = [[0, eps + m], [eps - m, 0]].
template <typename Scalar = double>
Matrix2c<Scalar> propagator(double eps, double m, double d) {
  using C = std::complex<Scalar>;
  const WaveTrig w = wave_trig((eps * eps - m * m) * d * d);
  const Scalar cq = static_cast<Scalar>(w.cos_q);
  const Scalar ds = static_cast<Scalar>(d * w.sinc_q);
  Matrix2c<Scalar> p;
  p << C(cq, 0), C(0, ds * static_cast<Scalar>(eps + m)),
      C(0, ds * static_cast<Scalar>(eps - m)), C(cq, 0);
  return p;
}

struct TransferMatrix {
  Matrix2cd T;
  double eps = 0.0;
  double d = 0.0;
};

// T = P(eps, d) D_U P(eps, 1 - d), mapping Psi((n+d)+) to Psi((n+d+1)+).
TransferMatrix transfer_matrix(const Coupling& c, double eps, double m, double d);

// |cos(q) sin(eta) + sinc(q)(eps cos(eta) - m m0)| <= sqrt(m1^2 + m2^2)
bool band_condition(const Coupling& c, double eps, double m, double tol = 1e-12);

struct EigenSplit {
  std::complex<double> lambda_minus;
  std::complex<double> lambda_plus;
  Vector2cd v_minus;
  Eigen::RowVector2cd w_plus;  // unit norm, first nonzero entry real positive
};

EigenSplit split_eigenpairs(const TransferMatrix& t, double tol = 1e-10);

// Psi(d+) direction fixed by the chiral edge condition: (-i cos(alpha/2), sin(alpha/2)).
Vector2cd boundary_vector(double alpha);

std::complex<double> boundary_spectral_value(const Coupling& c, double eps, double m, double d,
                                             double alpha);

struct EdgeOptions {
  int scan = 2000;
  double accept = 1e-8;        // |F| threshold
  double decay_margin = 1e-8;  // require |lambda-| < 1 - decay_margin
  double edge_margin = 1e-6;   // closer than this to a gap edge: boundary touching
  double refine_tol = 1e-12;
};

struct EdgeState {
  double eps = 0.0;
  double decay = 0.0;     // |lambda-|
  double residual = 0.0;  // |F|
  bool boundary_touching = false;
};

// Edge states of the half-line truncated at d with edge parameter alpha,
// inside one bulk gap; boundary-touching states are returned flagged.
std::vector<EdgeState> edge_states(const Coupling& c, double m, double d, double alpha,
                                   const Gap& gap, const EdgeOptions& options = {});

int count_states(const std::vector<EdgeState>& states);

struct GapEdgeStates {
  Gap gap;
  std::vector<EdgeState> states;
};

std::vector<GapEdgeStates> edge_spectrum(const BandStructure& bands, double d, double alpha,
                                         const EdgeOptions& options = {});

struct EdgeCounts {
  int band = 0;
  int n_below = 0;
  int n_above = 0;
  int touching = 0;  // boundary-touching states seen in the counted gaps
};

// Adjacent-gap counts around band n; cumulative mode sums every gap of the
// window below and above the band.
EdgeCounts edge_counts(const BandStructure& bands, double d, double alpha, int n,
                       bool cumulative = false, const EdgeOptions& options = {});

// (-1)^{n+1} sign(n) sign(alpha) sign(|theta| - pi/2)
int bbc_sign(int n, double theta, double alpha);

enum class Verdict { Holds, Violated, Degenerate };
std::string to_string(Verdict v);

struct BbcOptions {
  ZakOptions zak;
  EdgeOptions edge;
  int label_k_count = 128;
  double quantization_tol = 0.1;
  bool cumulative = false;
};

struct BbcRecord {
  int band = 0;
  double d = 0.0;
  double alpha = 0.0;
  double zak = 0.0;
  double translated_zak = 0.0;
  int n_below = 0;
  int n_above = 0;
  int sign = 0;
  int touching = 0;
  Verdict verdict = Verdict::Degenerate;
  std::string reason;
};

// Compares translated Zak / pi with sign * (N_b - N_a). Family D is rejected.
BbcRecord bbc_verdict(Family family, const SweepPoint& p, double m, int n, double d,
                      double alpha, const BbcOptions& options = {});

BbcRecord bbc_verdict(const BandStructure& bands, double theta, int n, double d,
                      double alpha, const BbcOptions& options = {});

enum class EdgeAxis { Alpha, D };

struct EdgeSweepOptions {
  EdgeAxis axis = EdgeAxis::Alpha;
  double fixed = 0.5;  // d for the alpha axis, alpha for the d axis
  std::vector<double> axis_values;
  // 0: central gap, j > 0: gap above band j, j < 0: gap below band j.
  std::vector<int> gaps{0, 1, 2};
  double margin = 0.05;
  unsigned workers = 1;
  int label_k_count = 128;
  EdgeOptions edge;
};

struct EdgeSweepRow {
  SweepPoint point;
  double d = 0.0;
  double alpha = 0.0;
  int gap_id = 0;
  double gap_lo = 0.0;
  double gap_hi = 0.0;
  int count = 0;
  int touching = 0;
  bool near_locus = false;
  std::string error;
};

const Gap* find_gap(const BandStructure& bands, int gap_id);

std::vector<EdgeSweepRow> edge_sweep(Family family, const std::vector<SweepPoint>& grid,
                                     double m, const EdgeSweepOptions& options);

}  // namespace gdkp

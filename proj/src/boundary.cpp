#include "gdkp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gdkp/errors.hpp"
#include "gdkp/kurasov.hpp"
#include "gdkp/parallel.hpp"

namespace gdkp {

namespace {

using cd = std::complex<double>;

// Eigenvector of a 2x2 matrix t for eigenvalue lambda, taking the better
// conditioned of the two row (or column) based candidates.
Vector2cd right_eigenvector(const Matrix2cd& t, cd lambda) {
  const Vector2cd a(t(0, 1), lambda - t(0, 0));
  const Vector2cd b(lambda - t(1, 1), t(1, 0));
  return a.norm() >= b.norm() ? a : b;
}

Eigen::RowVector2cd left_eigenvector(const Matrix2cd& t, cd lambda) {
  const Eigen::RowVector2cd a(t(1, 0), lambda - t(0, 0));
  const Eigen::RowVector2cd b(lambda - t(1, 1), t(0, 1));
  return a.norm() >= b.norm() ? a : b;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

TransferMatrix transfer_matrix(const Coupling& c, double eps, double m, double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw Error(ErrorCode::InvalidParameter, "d must lie in [0, 1]");
  TransferMatrix t;
  t.eps = eps;
  t.d = d;
  t.T = propagator(eps, m, d) * interaction_matrix(c) * propagator(eps, m, 1.0 - d);
  return t;
}

bool band_condition(const Coupling& c, double eps, double m, double tol) {
  require_permeable(c);
  return std::abs(band_function(c, eps, m)) <= permeable_radius(c) + tol;
}

EigenSplit split_eigenpairs(const TransferMatrix& t, double tol) {
  const cd tr = t.T.trace();
  const cd det = t.T.determinant();
  const cd root = std::sqrt(tr * tr - 4.0 * det);
  // Larger-modulus root first, the other from the product to avoid cancellation.
  const cd l1 = 0.5 * (std::abs(tr + root) >= std::abs(tr - root) ? tr + root : tr - root);
  const cd l2 = det / l1;
  EigenSplit s;
  s.lambda_plus = l1;
  s.lambda_minus = l2;
  if (std::abs(std::abs(l2) - 1.0) <= tol && std::abs(std::abs(l1) - 1.0) <= tol) {
    throw Error(ErrorCode::Unimodular, "both transfer eigenvalues have unit modulus");
  }
  s.v_minus = right_eigenvector(t.T, l2);
  s.v_minus.normalize();
  Eigen::RowVector2cd w = left_eigenvector(t.T, l1);
  w.normalize();
  const cd lead = std::abs(w[0]) > 1e-12 ? w[0] : w[1];
  w *= std::conj(lead) / std::abs(lead);
  s.w_plus = w;
  return s;
}

Vector2cd boundary_vector(double alpha) {
  return Vector2cd(cd(0.0, -std::cos(0.5 * alpha)), cd(std::sin(0.5 * alpha), 0.0));
}

cd boundary_spectral_value(const Coupling& c, double eps, double m, double d, double alpha) {
  const EigenSplit s = split_eigenpairs(transfer_matrix(c, eps, m, d));
  return s.w_plus * boundary_vector(alpha);
}

std::vector<EdgeState> edge_states(const Coupling& c, double m, double d, double alpha,
                                   const Gap& gap, const EdgeOptions& options) {
  require_permeable(c);
  const int n = std::max(3, options.scan);
  const double width = gap.hi - gap.lo;
  auto residual = [&](double e) {
    try {
      return std::abs(boundary_spectral_value(c, e, m, d, alpha));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Unimodular) throw;
      return std::numeric_limits<double>::infinity();
    }
  };
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = gap.lo + width * (i + 1) / (n + 1);
    fs[i] = residual(xs[i]);
  }
  const double inset = std::max(1e-14, 1e-13 * std::max(std::abs(gap.lo), std::abs(gap.hi)));
  std::vector<EdgeState> out;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i == n - 1 || fs[i] < fs[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = i == 0 ? gap.lo + inset : xs[i - 1];
    const double b = i == n - 1 ? gap.hi - inset : xs[i + 1];
    const double e = golden_minimum(residual, a, b, options.refine_tol);
    const double f = residual(e);
    if (!(f < options.accept)) continue;
    const EigenSplit s = split_eigenpairs(transfer_matrix(c, e, m, d));
    const double decay = std::abs(s.lambda_minus);
    if (!(decay < 1.0 - options.decay_margin)) continue;
    if (!out.empty() && std::abs(out.back().eps - e) < 1e-9) continue;
    EdgeState st;
    st.eps = e;
    st.decay = decay;
    st.residual = f;
    st.boundary_touching = (e - gap.lo) < options.edge_margin || (gap.hi - e) < options.edge_margin;
    out.push_back(st);
  }
  return out;
}

int count_states(const std::vector<EdgeState>& states) {
  return static_cast<int>(std::count_if(states.begin(), states.end(),
                                        [](const EdgeState& s) { return !s.boundary_touching; }));
}

std::vector<GapEdgeStates> edge_spectrum(const BandStructure& bands, double d, double alpha,
                                         const EdgeOptions& options) {
  std::vector<GapEdgeStates> out;
  for (const Gap& g : bands.gaps) {
    out.push_back({g, edge_states(bands.coupling, bands.mass, d, alpha, g, options)});
  }
  return out;
}

EdgeCounts edge_counts(const BandStructure& bands, double d, double alpha, int n,
                       bool cumulative, const EdgeOptions& options) {
  if (!bands.bands.count(n)) {
    throw Error(ErrorCode::GapUnresolved, "band " + std::to_string(n) + " not resolved");
  }
  EdgeCounts out;
  out.band = n;
  auto tally = [&](const Gap& g, int& counter) {
    const auto states = edge_states(bands.coupling, bands.mass, d, alpha, g, options);
    counter += count_states(states);
    out.touching += static_cast<int>(states.size()) - count_states(states);
  };
  if (!cumulative) {
    const Gap* below = bands.gap_below(n);
    const Gap* above = bands.gap_above(n);
    if (!below || !above) {
      throw Error(ErrorCode::GapUnresolved,
                  "gaps adjacent to band " + std::to_string(n) + " not resolved");
    }
    tally(*below, out.n_below);
    tally(*above, out.n_above);
    return out;
  }
  const double lo = bands.band_min(n), hi = bands.band_max(n);
  for (const Gap& g : bands.gaps) {
    if (g.hi <= lo) tally(g, out.n_below);
    if (g.lo >= hi) tally(g, out.n_above);
  }
  return out;
}

int bbc_sign(int n, double theta, double alpha) {
  const int parity = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
  return parity * sign_of(n) * sign_of(alpha) * sign_of(std::abs(theta) - pi / 2);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

BbcRecord bbc_verdict(const BandStructure& bands, double theta, int n, double d, double alpha,
                      const BbcOptions& options) {
  if (!(d >= 0.0 && d < 1.0)) throw Error(ErrorCode::InvalidParameter, "d must lie in [0, 1)");
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "band label must be nonzero");
  BbcRecord rec;
  rec.band = n;
  rec.d = d;
  rec.alpha = alpha;
  const ZakResult z = zak_phase(bands, n, options.zak);
  rec.zak = z.phase;
  rec.translated_zak = translated_zak(z.phase, d);
  const EdgeCounts counts = edge_counts(bands, d, alpha, n, options.cumulative, options.edge);
  rec.n_below = counts.n_below;
  rec.n_above = counts.n_above;
  rec.touching = counts.touching;
  rec.sign = bbc_sign(n, theta, alpha);

  const double ratio = rec.translated_zak / pi;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) > options.quantization_tol) {
    rec.verdict = Verdict::Degenerate;
    rec.reason = "translated Zak phase is not a multiple of pi";
    return rec;
  }
  const int zak_index = static_cast<int>(nearest) % 2;
  const int boundary_index = rec.sign * (rec.n_below - rec.n_above);
  rec.verdict = boundary_index == zak_index ? Verdict::Holds : Verdict::Violated;
  // pi and -pi are the same phase.
  if (zak_index == 1 && boundary_index == -1) rec.reason = "agrees with the opposite sign";
  if (rec.touching > 0 && rec.reason.empty()) rec.reason = "boundary-touching edge states excluded from counts";
  return rec;
}

BbcRecord bbc_verdict(Family family, const SweepPoint& p, double m, int n, double d,
                      double alpha, const BbcOptions& options) {
  if (family == Family::D) {
    throw Error(ErrorCode::InvalidParameter, "bulk-boundary verdicts need a BDI or AIII coupling");
  }
  const Coupling c = family_coupling(family, p.theta, p.m2);
  BandOptions bo;
  bo.k_count = options.label_k_count;
  bo.n_max = std::abs(n) + 2;
  bo.eps_scan = options.zak.eps_scan;
  bo.workers = options.zak.workers;
  return bbc_verdict(band_structure(c, m, bo), p.theta, n, d, alpha, options);
}

const Gap* find_gap(const BandStructure& bands, int gap_id) {
  if (gap_id > 0) return bands.gap_above(gap_id);
  if (gap_id < 0) return bands.gap_below(gap_id);
  if (bands.has_zero_band()) return nullptr;
  for (const Gap& g : bands.gaps) {
    if (g.below_band == -1 && g.above_band == 1) return &g;
  }
  return nullptr;
}

std::vector<EdgeSweepRow> edge_sweep(Family family, const std::vector<SweepPoint>& grid,
                                     double m, const EdgeSweepOptions& options) {
  const std::size_t na = options.axis_values.size();
  const std::size_t ng = options.gaps.size();
  int max_gap = 0;
  for (int g : options.gaps) max_gap = std::max(max_gap, std::abs(g));
  std::vector<EdgeSweepRow> rows(grid.size() * na * ng);

  parallel_for(grid.size() * na, options.workers, [&](std::size_t idx) {
    const std::size_t gi = idx / na, ai = idx % na;
    const SweepPoint& p = grid[gi];
    const double axis_value = options.axis_values[ai];
    const double d = options.axis == EdgeAxis::Alpha ? options.fixed : axis_value;
    const double alpha = options.axis == EdgeAxis::Alpha ? axis_value : options.fixed;
    const bool near = gap_closing_distance(family, p, m) < options.margin;
    for (std::size_t j = 0; j < ng; ++j) {
      EdgeSweepRow& row = rows[idx * ng + j];
      row.point = p;
      row.d = d;
      row.alpha = alpha;
      row.gap_id = options.gaps[j];
      row.near_locus = near;
    }
    try {
      const Coupling c = family_coupling(family, p.theta, p.m2);
      BandOptions bo;
      bo.k_count = options.label_k_count;
      bo.n_max = max_gap + 2;
      const BandStructure bs = band_structure(c, m, bo);
      for (std::size_t j = 0; j < ng; ++j) {
        EdgeSweepRow& row = rows[idx * ng + j];
        const Gap* g = find_gap(bs, row.gap_id);
        if (!g) {
          row.error = "gap " + std::to_string(row.gap_id) + " not resolved";
          continue;
        }
        row.gap_lo = g->lo;
        row.gap_hi = g->hi;
        try {
          const auto states = edge_states(c, m, d, alpha, *g, options.edge);
          row.count = count_states(states);
          row.touching = static_cast<int>(states.size()) - row.count;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t j = 0; j < ng; ++j) rows[idx * ng + j].error = e.what();
    }
  });
  return rows;
}

}  // namespace gdkp

#include "gdkp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "gdkp/errors.hpp"
#include "gdkp/numeric.hpp"
#include "gdkp/parallel.hpp"

namespace gdkp {

std::complex<double> wavenumber(double eps, double m) {
  const double s = eps * eps - m * m;
  if (s >= 0.0) return {std::sqrt(s), 0.0};
  return {0.0, std::sqrt(-s)};
}

double band_function(const Coupling& c, double eps, double m) {
  const WaveTrig w = wave_trig(eps * eps - m * m);
  return w.cos_q * std::sin(c.eta) + w.sinc_q * (eps * std::cos(c.eta) - m * c.m0());
}

double band_function_derivative(const Coupling& c, double eps, double m) {
  const double s = eps * eps - m * m;
  const WaveTrig w = wave_trig(s);
  const WaveTrig dw = wave_trig_ds(s);
  const double ce = std::cos(c.eta);
  return 2.0 * eps * (dw.cos_q * std::sin(c.eta) + dw.sinc_q * (eps * ce - m * c.m0())) +
         w.sinc_q * ce;
}

double spectral_value(const Coupling& c, double k, double eps, double m) {
  return c.m1() * std::cos(k) + c.m2() * std::sin(k) + band_function(c, eps, m);
}

std::complex<double> spectral_value_matrix_form(const Coupling& c, double k, double eps,
                                                double m) {
  using cd = std::complex<double>;
  const cd i(0, 1);
  const WaveTrig w = wave_trig(eps * eps - m * m);
  // a = m sin q/(eps sin q - i q cos q), b = -i q/(...), both divided through by q.
  const cd den = eps * w.sinc_q - i * w.cos_q;
  const cd a = m * w.sinc_q / den;
  const cd b = -i / den;
  const Matrix2cd u = coupling_matrix(c);
  Matrix2cd sigma_k;
  sigma_k << 0.0, std::exp(-i * k), std::exp(i * k), 0.0;
  return a * a - b * b + u.determinant() - a * u.trace() + b * (u * sigma_k).trace();
}

std::vector<int> BandStructure::labels() const {
  std::vector<int> out;
  for (const auto& [n, values] : bands) out.push_back(n);
  return out;
}

double BandStructure::band_min(int n) const {
  const auto& v = bands.at(n);
  return *std::min_element(v.begin(), v.end());
}

double BandStructure::band_max(int n) const {
  const auto& v = bands.at(n);
  return *std::max_element(v.begin(), v.end());
}

const Gap* BandStructure::gap_below(int n) const {
  for (const auto& g : gaps) {
    if (g.above_band == n) return &g;
  }
  return nullptr;
}

const Gap* BandStructure::gap_above(int n) const {
  for (const auto& g : gaps) {
    if (g.below_band == n) return &g;
  }
  return nullptr;
}

std::pair<double, double> default_window(double m, int n_max) {
  const double half = (n_max + 1) * pi + m;
  return {-half, half};
}

namespace {

// Boundaries of the monotone pieces of band_function on [lo, hi]. Since
// spectral_value differs from band_function by a k-dependent constant, each
// piece holds at most one simple root per k.
struct MonotonePieces {
  std::vector<double> x;
  std::vector<double> f;
  std::vector<char> critical;
};

void add_crossings(const Coupling& c, double m, double a, double b, int sub,
                   std::vector<double>& out, bool allow_retry) {
  auto df = [&](double e) { return band_function_derivative(c, e, m); };
  const double h = (b - a) / sub;
  double xa = a, da = df(a);
  for (int i = 1; i <= sub; ++i) {
    const double xb = (i == sub) ? b : a + i * h;
    const double db = df(xb);
    if ((da < 0.0) != (db < 0.0)) {
      out.push_back(bisect(df, xa, xb, da));
    } else {
      // A hidden pair of derivative zeros shows up as a midpoint of opposite
      // sign or a parabola vertex crossing zero inside the cell.
      const double xm = 0.5 * (xa + xb);
      const double dm = df(xm);
      if ((dm < 0.0) != (da < 0.0)) {
        out.push_back(bisect(df, xa, xm, da));
        out.push_back(bisect(df, xm, xb, dm));
      } else {
        const double curv = da - 2.0 * dm + db;
        const double t = curv != 0.0 ? 0.25 * (3.0 * da - 4.0 * dm + db) / curv : -1.0;
        if (t > 0.0 && t < 1.0) {
          const double pv = da + t * (-3.0 * da + 4.0 * dm - db) + 2.0 * t * t * curv;
          if (pv != 0.0 && (pv < 0.0) != (da < 0.0)) {
            if (!allow_retry) {
              throw Error(ErrorCode::DegenerateBracketing,
                          "unresolved even-order root in scan cell");
            }
            add_crossings(c, m, xa, xb, 10, out, false);
          }
        }
      }
    }
    xa = xb;
    da = db;
  }
}

MonotonePieces monotone_pieces(const Coupling& c, double m, double lo, double hi, int scan) {
  std::vector<double> crit;
  add_crossings(c, m, lo, hi, scan - 1, crit, true);
  std::sort(crit.begin(), crit.end());
  MonotonePieces p;
  p.x.push_back(lo);
  p.critical.push_back(0);
  for (double x : crit) {
    if (x > lo && x < hi && x > p.x.back()) {
      p.x.push_back(x);
      p.critical.push_back(1);
    }
  }
  p.x.push_back(hi);
  p.critical.push_back(0);
  for (double x : p.x) p.f.push_back(band_function(c, x, m));
  return p;
}

std::vector<double> roots_on_pieces(const Coupling& c, double k, double m,
                                    const MonotonePieces& p, double touch_tol,
                                    std::vector<double>* touchings) {
  const double shift = c.m1() * std::cos(k) + c.m2() * std::sin(k);
  const std::size_t n = p.x.size();
  std::vector<double> vals(n);
  std::vector<char> touched(n, 0);
  std::vector<double> roots;
  for (std::size_t j = 0; j < n; ++j) {
    vals[j] = shift + p.f[j];
    if (p.critical[j] && std::abs(vals[j]) <= touch_tol) {
      touched[j] = 1;
      roots.push_back(p.x[j]);
      roots.push_back(p.x[j]);
      if (touchings) touchings->push_back(p.x[j]);
    }
  }
  auto fk = [&](double e) { return shift + band_function(c, e, m); };
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (touched[j] || touched[j + 1]) continue;
    if ((vals[j] < 0.0) != (vals[j + 1] < 0.0)) {
      roots.push_back(bisect(fk, p.x[j], p.x[j + 1], vals[j]));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Offset delta with b[i + delta] matching a[i] best in the max-norm.
int match_offset(const std::vector<double>& a, const std::vector<double>& b) {
  const int p = static_cast<int>(a.size());
  const int q = static_cast<int>(b.size());
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int delta = -4; delta <= 4; ++delta) {
    const int i0 = std::max(0, -delta);
    const int i1 = std::min(p, q - delta);
    if (i1 - i0 < std::max(1, std::min(p, q) - 4)) continue;
    double cost = 0.0;
    for (int i = i0; i < i1; ++i) cost = std::max(cost, std::abs(b[i + delta] - a[i]));
    if (cost < best_cost - 1e-15 ||
        (std::abs(cost - best_cost) <= 1e-15 && std::abs(delta) < std::abs(best))) {
      best_cost = cost;
      best = delta;
    }
  }
  return best;
}

void validate_window(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < 0.0 && 0.0 < hi)) {
    throw Error(ErrorCode::InvalidParameter, "energy window must contain 0");
  }
}

}  // namespace

std::vector<double> spectral_roots(const Coupling& c, double k, double m, double lo,
                                   double hi, int eps_scan, double touch_tol) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidParameter, "empty energy window");
  if (eps_scan < 100) throw Error(ErrorCode::InvalidParameter, "eps_scan must be >= 100");
  const MonotonePieces p = monotone_pieces(c, m, lo, hi, eps_scan);
  return roots_on_pieces(c, k, m, p, touch_tol, nullptr);
}

double band_energy(const Coupling& c, double k, double m, double lo, double hi) {
  auto fk = [&](double e) { return spectral_value(c, k, e, m); };
  const double fa = fk(lo), fb = fk(hi);
  if ((fa < 0.0) == (fb < 0.0)) {
    throw Error(ErrorCode::BandNotIsolated, "no sign change of the spectral function in bracket");
  }
  return bisect(fk, lo, hi, fa);
}

BandStructure band_structure(const Coupling& c, double m, const BandOptions& options) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameter, "mass must be positive");
  if (options.k_count < 2) throw Error(ErrorCode::InvalidParameter, "k_count must be >= 2");
  if (options.eps_scan < 100) throw Error(ErrorCode::InvalidParameter, "eps_scan must be >= 100");
  double lo = options.eps_lo, hi = options.eps_hi;
  if (std::isnan(lo) || std::isnan(hi)) {
    const auto w = default_window(m, options.n_max);
    if (std::isnan(lo)) lo = w.first;
    if (std::isnan(hi)) hi = w.second;
  }
  validate_window(lo, hi);

  BandStructure bs;
  bs.coupling = c;
  bs.mass = m;
  bs.eps_lo = lo;
  bs.eps_hi = hi;
  const int K = options.k_count;
  bs.k_grid.resize(K);
  for (int i = 0; i < K; ++i) bs.k_grid[i] = -pi + two_pi * i / K;

  const MonotonePieces pieces = monotone_pieces(c, m, lo, hi, options.eps_scan);
  std::vector<std::vector<double>> columns(K);
  std::vector<std::vector<double>> touch(K);
  parallel_for(K, options.workers, [&](std::size_t j) {
    columns[j] = roots_on_pieces(c, bs.k_grid[j], m, pieces, options.touch_tol, &touch[j]);
  });
  for (int j = 0; j < K; ++j) {
    for (double e : touch[j]) bs.touchings.push_back({bs.k_grid[j], e});
  }

  // Continuity tracking: ordinal of root i in column j is base[j] + i.
  std::vector<int> base(K, 0);
  for (int j = 0; j + 1 < K; ++j) {
    base[j + 1] = base[j] - match_offset(columns[j], columns[j + 1]);
  }
  int omin = std::numeric_limits<int>::max(), omax = std::numeric_limits<int>::min();
  for (int j = 0; j < K; ++j) {
    if (columns[j].empty()) continue;
    omin = std::min(omin, base[j]);
    omax = std::max(omax, base[j] + static_cast<int>(columns[j].size()) - 1);
  }
  std::vector<std::vector<double>> complete;
  for (int o = omin; o <= omax; ++o) {
    std::vector<double> v(K);
    bool full = true;
    for (int j = 0; j < K && full; ++j) {
      const int i = o - base[j];
      if (i < 0 || i >= static_cast<int>(columns[j].size())) {
        full = false;
      } else {
        v[j] = columns[j][i];
      }
    }
    if (full) complete.push_back(std::move(v));
  }
  if (complete.size() < 2) {
    throw Error(ErrorCode::WindowTooSmall, "fewer than 2 complete bands in the energy window");
  }

  // Bands reaching zero: an odd number puts the middle one at n = 0.
  const int nb = static_cast<int>(complete.size());
  std::vector<double> bmin(nb), bmax(nb);
  for (int b = 0; b < nb; ++b) {
    bmin[b] = *std::min_element(complete[b].begin(), complete[b].end());
    bmax[b] = *std::max_element(complete[b].begin(), complete[b].end());
  }
  std::vector<int> at_zero;
  for (int b = 0; b < nb; ++b) {
    if (bmin[b] <= options.zero_tol && bmax[b] >= -options.zero_tol) at_zero.push_back(b);
  }
  int first_positive = 0;  // index of the band labelled +1
  int zero_index = -1;
  if (at_zero.empty()) {
    first_positive = nb;
    for (int b = 0; b < nb; ++b) {
      if (bmin[b] > 0.0) {
        first_positive = b;
        break;
      }
    }
  } else {
    const int nz = static_cast<int>(at_zero.size());
    if (nz % 2 == 1) {
      zero_index = at_zero[nz / 2];
      first_positive = zero_index + 1;
    } else {
      first_positive = at_zero[nz / 2];
    }
  }
  std::vector<int> label(nb);
  for (int b = 0; b < nb; ++b) {
    if (b == zero_index) {
      label[b] = 0;
    } else if (b >= first_positive) {
      label[b] = b - first_positive + 1;
    } else {
      const int top_negative = zero_index >= 0 ? zero_index - 1 : first_positive - 1;
      label[b] = -(top_negative - b + 1);
    }
    bs.bands[label[b]] = complete[b];
  }

  const bool permeable = permeability(c) == Permeability::Permeable;
  const double r = permeable_radius(c);
  auto outside = [&](double e) { return std::abs(band_function(c, e, m)) - r; };
  for (int b = 0; b + 1 < nb; ++b) {
    Gap g{bmax[b], bmin[b + 1], label[b], label[b + 1]};
    if (g.hi - g.lo <= 1e-9) continue;
    if (permeable) {
      // The k-grid underestimates band widths; the band condition gives the
      // exact edges, and rejects openings that are grid artifacts.
      const double mid = g.mid();
      const double om = outside(mid);
      if (om <= 0.0) continue;
      g.lo = bisect(outside, g.lo, mid, -1.0);
      g.hi = bisect(outside, mid, g.hi, om);
    }
    bs.gaps.push_back(g);
  }
  return bs;
}

ZeroModeReport zero_modes(const Coupling& c, double m, double tol) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameter, "mass must be positive");
  ZeroModeReport rep;
  rep.G = std::cosh(m) * std::sin(c.eta) - c.m0() * std::sinh(m);
  const double r = permeable_radius(c);
  if (permeability(c) == Permeability::Impermeable) {
    rep.flat_zero_band = std::abs(rep.G) <= tol;
    return rep;
  }
  // F_k(0) = m1 cos k + m2 sin k + G = r cos(k - phi) + G
  const double phi = std::atan2(c.m2(), c.m1());
  const double excess = std::abs(rep.G) - r;
  if (excess > tol) return rep;
  if (std::abs(excess) <= tol) {
    rep.count = 1;
    rep.momenta.push_back(wrap_pi(phi + (rep.G > 0.0 ? pi : 0.0)));
    return rep;
  }
  const double a = std::acos(std::clamp(-rep.G / r, -1.0, 1.0));
  rep.count = 2;
  rep.momenta = {wrap_pi(phi - a), wrap_pi(phi + a)};
  std::sort(rep.momenta.begin(), rep.momenta.end());
  return rep;
}

SymmetryReport check_spectral_symmetries(const BandStructure& bands, double tol,
                                         double symmetry_tol) {
  const auto& ks = bands.k_grid;
  const std::size_t K = ks.size();
  std::vector<std::size_t> mirror(K);
  for (std::size_t i = 0; i < K; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < K; ++j) {
      if (circular_distance(ks[j], -ks[i]) < 1e-12) {
        mirror[i] = j;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::GridNotSymmetric, "k-grid is not symmetric under k -> -k");
  }
  SymmetryReport rep;
  rep.expected = classify_symmetry(bands.coupling, symmetry_tol);
  for (const auto& [n, v] : bands.bands) {
    const auto partner = bands.bands.find(-n);
    for (std::size_t i = 0; i < K; ++i) {
      rep.dev_T = std::max(rep.dev_T, std::abs(v[i] - v[mirror[i]]));
      if (partner != bands.bands.end()) {
        const auto& w = partner->second;
        rep.dev_C = std::max(rep.dev_C, std::abs(v[i] + w[mirror[i]]));
        rep.dev_S = std::max(rep.dev_S, std::abs(v[i] + w[i]));
      }
    }
  }
  rep.holds_T = rep.dev_T <= tol;
  rep.holds_C = rep.dev_C <= tol;
  rep.holds_S = rep.dev_S <= tol;
  return rep;
}

}  // namespace gdkp

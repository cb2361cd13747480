#include "gdkp/zak.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "gdkp/bloch.hpp"
#include "gdkp/errors.hpp"
#include "gdkp/numeric.hpp"
#include "gdkp/parallel.hpp"

namespace gdkp {

namespace {

using cd = std::complex<double>;
using OverlapFn = std::function<cd(const BlochState&, const BlochState&)>;

struct Bracket {
  double lo;
  double hi;
};

Bracket band_bracket(const BandStructure& bands, int band) {
  if (!bands.bands.count(band)) {
    throw Error(ErrorCode::BandNotIsolated,
                "band " + std::to_string(band) + " not resolved in the energy window");
  }
  const Gap* below = bands.gap_below(band);
  const Gap* above = bands.gap_above(band);
  if (!below || !above) {
    throw Error(ErrorCode::BandNotIsolated, "band " + std::to_string(band) + " is not isolated");
  }
  return {below->mid(), above->mid()};
}

std::vector<BlochState> loop_states(const BandStructure& bands, const Bracket& br, int M,
                                    double k_shift, unsigned workers) {
  std::vector<BlochState> states(M + 1);
  parallel_for(states.size(), workers, [&](std::size_t i) {
    const double k = -pi + k_shift + two_pi * static_cast<double>(i) / M;
    const double eps = band_energy(bands.coupling, k, bands.mass, br.lo, br.hi);
    states[i] = bloch_state(bands.coupling, k, eps, bands.mass);
  });
  return states;
}

double wilson_phase(const std::vector<BlochState>& states, std::size_t stride,
                    const OverlapFn& overlap, double collapse_tol) {
  std::vector<double> norms(states.size());
  for (std::size_t i = 0; i < states.size(); i += stride) {
    norms[i] = std::sqrt(zak_gauge_overlap(states[i], states[i]).value.real());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + stride < states.size(); i += stride) {
    const cd s = overlap(states[i], states[i + stride]);
    if (std::abs(s) < collapse_tol * norms[i] * norms[i + stride]) {
      throw Error(ErrorCode::GaugeSingular, "overlap collapse along the Wilson loop");
    }
    sum += std::arg(s);
  }
  return wrap_two_pi(-sum);
}

ZakResult run_loop(const BandStructure& bands, int band, const ZakOptions& options,
                   const OverlapFn& overlap) {
  if (options.M < 64) throw Error(ErrorCode::InvalidParameter, "M must be >= 64");
  const Bracket br = band_bracket(bands, band);
  ZakResult res;
  res.band = band;
  res.flat_band = permeability(bands.coupling) == Permeability::Impermeable;
  res.bracket_lo = br.lo;
  res.bracket_hi = br.hi;

  auto attempt = [&](int M) {
    const auto states = loop_states(bands, br, M, options.k_shift, options.workers);
    res.M = M;
    res.phase = wilson_phase(states, 1, overlap, options.collapse_tol);
    if (!options.convergence) return;
    double coarse;
    if (M % 2 == 0) {
      coarse = wilson_phase(states, 2, overlap, options.collapse_tol);
    } else {
      const auto half = loop_states(bands, br, M / 2, options.k_shift, options.workers);
      coarse = wilson_phase(half, 1, overlap, options.collapse_tol);
    }
    res.convergence = circular_distance(res.phase, coarse);
  };

  try {
    attempt(options.M);
  } catch (const Error& e) {
    const bool gauge = e.code() == ErrorCode::GaugeSingular || e.code() == ErrorCode::BandEdge;
    if (!gauge || !options.retry) throw;
    res.retried = true;
    attempt(options.M + 1);
  }
  return res;
}

BandStructure labelling_bands(const Coupling& c, double m, int band, const ZakOptions& options) {
  BandOptions bo;
  bo.k_count = options.label_k_count;
  bo.n_max = std::abs(band) + 2;
  bo.eps_scan = options.eps_scan;
  bo.workers = options.workers;
  return band_structure(c, m, bo);
}

}  // namespace

ZakResult zak_phase(const BandStructure& bands, int band, const ZakOptions& options) {
  return run_loop(bands, band, options, [](const BlochState& a, const BlochState& b) {
    return zak_gauge_overlap(a, b).value;
  });
}

ZakResult zak_phase(const Coupling& c, double m, int band, const ZakOptions& options) {
  return zak_phase(labelling_bands(c, m, band, options), band, options);
}

double translated_zak(double phase, double d) {
  return wrap_two_pi(phase - pi * (1.0 - 2.0 * d));
}

ZakResult zak_phase_shifted_cell(const BandStructure& bands, int band, double d,
                                 const ZakOptions& options) {
  if (!(d >= 0.0 && d < 1.0)) throw Error(ErrorCode::InvalidParameter, "d must lie in [0, 1)");
  return run_loop(bands, band, options, [d](const BlochState& a, const BlochState& b) {
    return shifted_cell_overlap(a, b, d);
  });
}

double gap_closing_distance(Family family, const SweepPoint& p, double m) {
  const double at = std::abs(p.theta);
  switch (family) {
    case Family::D:
      return std::numeric_limits<double>::infinity();
    case Family::BDI: {
      const double theta_m = std::acos(std::tanh(m));
      return std::min(std::abs(at - pi / 2), std::abs(at - theta_m));
    }
    case Family::AIII: {
      const double s = std::sqrt(std::max(0.0, 1.0 - p.m2 * p.m2));
      return std::min(std::abs(at - pi / 2), std::abs(s * std::cos(p.theta) - std::tanh(m)));
    }
  }
  return 0.0;
}

std::vector<ZakSweepRow> zak_sweep(Family family, const std::vector<SweepPoint>& grid,
                                   double m, const std::vector<int>& bands,
                                   const ZakSweepOptions& options) {
  const std::size_t nb = bands.size();
  std::vector<ZakSweepRow> rows(grid.size() * nb);
  int max_band = 0;
  for (int b : bands) max_band = std::max(max_band, std::abs(b));

  ZakOptions zo = options.zak;
  zo.workers = 1;
  parallel_for(grid.size(), options.workers, [&](std::size_t g) {
    const SweepPoint& p = grid[g];
    const bool near = gap_closing_distance(family, p, m) < options.margin;
    for (std::size_t j = 0; j < nb; ++j) {
      ZakSweepRow& row = rows[g * nb + j];
      row.point = p;
      row.band = bands[j];
      row.near_locus = near;
    }
    try {
      const Coupling c = family_coupling(family, p.theta, p.m2);
      BandOptions bo;
      bo.k_count = zo.label_k_count;
      bo.n_max = max_band + 2;
      bo.eps_scan = zo.eps_scan;
      const BandStructure bs = band_structure(c, m, bo);
      for (std::size_t j = 0; j < nb; ++j) {
        ZakSweepRow& row = rows[g * nb + j];
        try {
          const ZakResult z = zak_phase(bs, bands[j], zo);
          row.phase = z.phase;
          row.convergence = z.convergence;
          row.flat_band = z.flat_band;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t j = 0; j < nb; ++j) rows[g * nb + j].error = e.what();
    }
  });

  // Per band, shift by multiples of 2pi to keep consecutive grid points close.
  for (std::size_t j = 0; j < nb; ++j) {
    bool have_prev = false;
    double prev = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      ZakSweepRow& row = rows[g * nb + j];
      row.phase_unwrapped = row.phase;
      if (!row.error.empty()) continue;
      if (options.unwrap && have_prev) {
        row.phase_unwrapped = prev + wrap_pi(row.phase - prev);
      }
      prev = row.phase_unwrapped;
      have_prev = true;
    }
  }
  return rows;
}

}  // namespace gdkp

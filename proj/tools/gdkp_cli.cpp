#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdkp/boundary.hpp"
#include "gdkp/errors.hpp"
#include "gdkp/io.hpp"
#include "gdkp/kurasov.hpp"
#include "gdkp/spectral.hpp"
#include "gdkp/zak.hpp"

using namespace gdkp;

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

// JSON config: top-level keys are global options, nested objects are
// subcommand sections, e.g. {"mass": 1, "sweep": {"zak": {"M": 1024}}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j;
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames()[0];
      if (opt->count() > 0) {
        j[name] = opt->results().size() == 1 ? json(opt->results()[0]) : json(opt->results());
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
  }

  static void collect(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct Globals {
  double mass = 1.0;
  std::string format = "json";
  std::string out;
  unsigned workers = 1;
  double tol = 1e-9;
};

struct CouplingArgs {
  std::string family;
  double theta = nan_value;
  double m2 = 0.0;
  double eta = nan_value;
  std::vector<double> m;

  Coupling resolve() const {
    if (!family.empty()) {
      if (std::isnan(theta)) throw Error(ErrorCode::InvalidParameter, "--theta is required with --family");
      return family_coupling(parse_family(family), theta, m2);
    }
    if (!std::isnan(eta) && m.size() == 4) {
      return make_coupling(eta, Eigen::Vector4d(m[0], m[1], m[2], m[3]));
    }
    throw Error(ErrorCode::InvalidParameter, "give --family with --theta, or --eta with --m");
  }

  Family require_family() const {
    if (family.empty()) throw Error(ErrorCode::InvalidParameter, "--family is required");
    return parse_family(family);
  }
};

void add_coupling_options(CLI::App* sub, CouplingArgs& c) {
  sub->add_option("--family", c.family, "Coupling family: D, BDI or AIII")
      ->check(CLI::IsMember({"D", "BDI", "AIII"}));
  sub->add_option("--theta", c.theta, "Family angle in [-pi, pi), radians");
  sub->add_option("--m2", c.m2, "AIII parameter m2 in [-1, 1]")->default_val(0.0);
  sub->add_option("--eta", c.eta, "Raw coupling phase eta");
  sub->add_option("--m", c.m, "Raw coupling vector m0 m1 m2 m3")->expected(4);
}

struct Grid {
  double lo;
  double hi;
  int count;
};

// Half-open grid lo + i (hi - lo) / count.
std::vector<double> half_open(const Grid& g) {
  std::vector<double> v(std::max(0, g.count));
  for (int i = 0; i < g.count; ++i) v[i] = g.lo + (g.hi - g.lo) * i / g.count;
  return v;
}

// Closed grid including both ends.
std::vector<double> closed(const Grid& g) {
  if (g.count == 1) return {g.lo};
  std::vector<double> v(std::max(0, g.count));
  for (int i = 0; i < g.count; ++i) v[i] = g.lo + (g.hi - g.lo) * i / (g.count - 1);
  return v;
}

Grid parse_grid(const std::vector<double>& v, Grid fallback) {
  if (v.empty()) return fallback;
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) {
    throw Error(ErrorCode::InvalidParameter, "grid needs: lo hi count");
  }
  return {v[0], v[1], static_cast<int>(v[2])};
}

std::vector<SweepPoint> sweep_points(Family family, const std::vector<double>& theta_spec,
                                     const std::vector<double>& m2_spec) {
  const auto thetas = half_open(parse_grid(theta_spec, {-pi, pi, 72}));
  std::vector<double> m2s{0.0};
  if (family == Family::AIII) m2s = closed(parse_grid(m2_spec, {-0.95, 0.95, 20}));
  std::vector<SweepPoint> pts;
  for (double m2 : m2s)
    for (double t : thetas) pts.push_back({t, m2});
  return pts;
}

class Output {
 public:
  explicit Output(const Globals& g) : format_(g.format) {
    if (!g.out.empty()) {
      file_.open(g.out);
      if (!file_) throw Error(ErrorCode::InvalidParameter, "cannot open output file " + g.out);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool csv() const { return format_ == "csv"; }
  void emit(const json& j) { stream() << j.dump(2) << '\n'; }

 private:
  std::string format_;
  std::ofstream file_;
};

json edge_state_json(const Gap& g, const std::vector<EdgeState>& states) {
  return {{"gap", g}, {"states", states}, {"count", count_states(states)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band structures, Zak phases and edge states of the Dirac-Kronig-Penney chain"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; explicit flags win");

  Globals g;
  app.add_option("--mass", g.mass, "Dirac mass m > 0")->default_val(1.0)->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")
      ->default_val("json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--workers", g.workers, "Worker threads, 0 = hardware concurrency")->default_val(1);
  app.add_option("--tol", g.tol, "Root acceptance tolerance")->default_val(1e-9)->check(CLI::PositiveNumber);

  // bands
  CouplingArgs bands_c;
  int bands_k = 128, bands_nmax = 3, bands_scan = 4000;
  std::vector<double> bands_window;
  auto* bands = app.add_subcommand("bands", "Band structure on a uniform k grid");
  add_coupling_options(bands, bands_c);
  bands->add_option("--k", bands_k, "Number of k points in [-pi, pi]")->default_val(128)->check(CLI::Range(2, 1 << 20));
  bands->add_option("--window", bands_window, "Energy window lo hi")->expected(2);
  bands->add_option("--n-max", bands_nmax, "Bands per side for the default window")->default_val(3);
  bands->add_option("--eps-scan", bands_scan, "Energy scan points")->default_val(4000)->check(CLI::Range(10, 1 << 24));

  // zak
  CouplingArgs zak_c;
  ZakOptions zak_o;
  int zak_band = 1;
  std::optional<double> zak_d;
  bool zak_shifted = false;
  auto* zak = app.add_subcommand("zak", "Zak phase of one band by a discrete Wilson loop");
  add_coupling_options(zak, zak_c);
  zak->add_option("--band", zak_band, "Band label n != 0")->required();
  zak->add_option("--M", zak_o.M, "Wilson loop size (>= 64)")->default_val(2048);
  zak->add_option("--k-shift", zak_o.k_shift, "Offset of the momentum grid")->default_val(0.0);
  zak->add_option("--d", zak_d, "Cell offset d in [0, 1): adds the translated phase");
  zak->add_flag("--shifted-cell", zak_shifted, "Also run the loop over cell-shifted states (needs --d)");

  // zero-modes
  CouplingArgs zm_c;
  auto* zm = app.add_subcommand("zero-modes", "Momenta with a zero-energy eigenvalue");
  add_coupling_options(zm, zm_c);

  // edges
  CouplingArgs edges_c;
  EdgeOptions edges_o;
  double edges_d = 0.5, edges_alpha = 0.0;
  std::optional<int> edges_gap;
  int edges_nmax = 3;
  auto* edges = app.add_subcommand("edges", "Edge states of the half-line truncated chain");
  add_coupling_options(edges, edges_c);
  edges->add_option("--d", edges_d, "Truncation offset d in [0, 1)")->default_val(0.5);
  edges->add_option("--alpha", edges_alpha, "Edge parameter alpha, radians")->required();
  edges->add_option("--gap", edges_gap, "Gap id: 0 central, j > 0 above band j, j < 0 below band j");
  edges->add_option("--n-max", edges_nmax, "Bands per side resolved")->default_val(3);
  edges->add_option("--scan", edges_o.scan, "Scan points per gap")->default_val(2000);

  // bbc
  CouplingArgs bbc_c;
  BbcOptions bbc_o;
  int bbc_band = 1;
  double bbc_d = 0.5, bbc_alpha = 0.0;
  auto* bbc = app.add_subcommand("bbc", "Bulk-boundary verdict for one band and truncation");
  add_coupling_options(bbc, bbc_c);
  bbc->add_option("--band", bbc_band, "Band label n != 0")->required();
  bbc->add_option("--d", bbc_d, "Truncation offset d in [0, 1)")->default_val(0.5);
  bbc->add_option("--alpha", bbc_alpha, "Edge parameter alpha, radians")->required();
  bbc->add_option("--M", bbc_o.zak.M, "Wilson loop size")->default_val(2048);
  bbc->add_flag("--cumulative", bbc_o.cumulative, "Count every gap below/above the band");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->require_subcommand(1);

  std::string sz_family;
  std::vector<double> sz_theta, sz_m2;
  std::vector<int> sz_bands{-2, -1, 1, 2};
  ZakSweepOptions sz_o;
  auto* sweep_zak = sweep->add_subcommand("zak", "Zak phase over a family grid");
  sweep_zak->add_option("--family", sz_family, "D, BDI or AIII")->required()->check(CLI::IsMember({"D", "BDI", "AIII"}));
  sweep_zak->add_option("--theta-grid", sz_theta, "lo hi count (half-open), default -pi pi 72")->expected(3);
  sweep_zak->add_option("--m2-grid", sz_m2, "lo hi count (closed), AIII only, default -0.95 0.95 20")->expected(3);
  sweep_zak->add_option("--bands", sz_bands, "Band labels")->default_str("-2 -1 1 2");
  sweep_zak->add_option("--M", sz_o.zak.M, "Wilson loop size")->default_val(2048);
  sweep_zak->add_option("--margin", sz_o.margin, "Flag rows closer than this to a gap-closing locus")->default_val(0.05);
  sweep_zak->add_flag("--unwrap", sz_o.unwrap, "Add unwrapped phases along the grid");

  std::string se_family;
  std::vector<double> se_theta, se_m2, se_axis;
  EdgeSweepOptions se_o;
  bool se_alpha_axis = false, se_d_axis = false;
  std::optional<double> se_d, se_alpha;
  auto* sweep_edges = sweep->add_subcommand("edges", "Edge-state counts over a family grid");
  sweep_edges->add_option("--family", se_family, "BDI or AIII")->required()->check(CLI::IsMember({"BDI", "AIII"}));
  auto* ax1 = sweep_edges->add_flag("--alpha-axis", se_alpha_axis, "Sweep alpha at fixed --d");
  auto* ax2 = sweep_edges->add_flag("--d-axis", se_d_axis, "Sweep d at fixed --alpha");
  ax1->excludes(ax2);
  sweep_edges->add_option("--d", se_d, "Fixed d for the alpha axis (default 0.5)");
  sweep_edges->add_option("--alpha", se_alpha, "Fixed alpha for the d axis (default pi/2)");
  sweep_edges->add_option("--axis-grid", se_axis, "lo hi count (half-open); default -pi pi 72 or 0 1 20")->expected(3);
  sweep_edges->add_option("--theta-grid", se_theta, "lo hi count (half-open), default -pi pi 72")->expected(3);
  sweep_edges->add_option("--m2-grid", se_m2, "lo hi count (closed), AIII only")->expected(3);
  sweep_edges->add_option("--gaps", se_o.gaps, "Gap ids")->default_str("0 1 2");
  sweep_edges->add_option("--margin", se_o.margin, "Flag rows closer than this to a gap-closing locus")->default_val(0.05);

  // kurasov
  CouplingArgs ku_c;
  std::vector<double> ku_g;
  auto* ku = app.add_subcommand("kurasov", "Convert between a coupling and delta strengths g");
  add_coupling_options(ku, ku_c);
  ku->add_option("--g", ku_g, "Strengths g0 g1 g2 g3 (converted to a coupling)")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "InvalidParameter"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }

  if (g.workers == 0) g.workers = std::max(1u, std::thread::hardware_concurrency());

  try {
    Output out(g);
    std::ostream& os = out.stream();

    if (*bands) {
      BandOptions bo;
      bo.k_count = bands_k;
      bo.n_max = bands_nmax;
      bo.eps_scan = bands_scan;
      bo.zero_tol = g.tol;
      bo.workers = g.workers;
      if (!bands_window.empty()) {
        bo.eps_lo = bands_window[0];
        bo.eps_hi = bands_window[1];
      }
      const BandStructure bs = band_structure(bands_c.resolve(), g.mass, bo);
      if (out.csv()) {
        CsvWriter w(os, {"k", "band", "eps"});
        for (const auto& [n, eps] : bs.bands)
          for (std::size_t i = 0; i < eps.size(); ++i) w.row({bs.k_grid[i], n, eps[i]});
      } else {
        out.emit(bs);
      }
    } else if (*zak) {
      const Coupling c = zak_c.resolve();
      zak_o.workers = g.workers;
      BandOptions bo;
      bo.k_count = zak_o.label_k_count;
      bo.n_max = std::abs(zak_band) + 2;
      bo.zero_tol = g.tol;
      bo.workers = g.workers;
      const BandStructure bs = band_structure(c, g.mass, bo);
      const ZakResult z = zak_phase(bs, zak_band, zak_o);
      json j = z;
      j["coupling"] = c;
      j["mass"] = g.mass;
      if (zak_d) {
        j["d"] = *zak_d;
        if (!(*zak_d >= 0.0 && *zak_d < 1.0)) throw Error(ErrorCode::InvalidParameter, "d must lie in [0, 1)");
        j["translated_phase"] = translated_zak(z.phase, *zak_d);
        if (zak_shifted) j["shifted_cell_phase"] = zak_phase_shifted_cell(bs, zak_band, *zak_d, zak_o).phase;
      } else if (zak_shifted) {
        throw Error(ErrorCode::InvalidParameter, "--shifted-cell needs --d");
      }
      if (out.csv()) {
        CsvWriter w(os, {"band", "phase", "M", "convergence", "flat_band", "retried", "d", "translated_phase",
                         "shifted_cell_phase"});
        w.row({z.band, z.phase, z.M, z.convergence, z.flat_band, z.retried, zak_d ? *zak_d : nan_value,
               j.contains("translated_phase") ? j["translated_phase"].get<double>() : nan_value,
               j.contains("shifted_cell_phase") ? j["shifted_cell_phase"].get<double>() : nan_value});
      } else {
        out.emit(j);
      }
    } else if (*zm) {
      const Coupling c = zm_c.resolve();
      const ZeroModeReport r = zero_modes(c, g.mass);
      if (out.csv()) {
        CsvWriter w(os, {"count", "G", "flat_zero_band", "k"});
        if (r.momenta.empty()) w.row({r.count, r.G, r.flat_zero_band, nan_value});
        for (double k : r.momenta) w.row({r.count, r.G, r.flat_zero_band, k});
      } else {
        json j = r;
        j["coupling"] = c;
        j["mass"] = g.mass;
        out.emit(j);
      }
    } else if (*edges) {
      const Coupling c = edges_c.resolve();
      if (!(edges_d >= 0.0 && edges_d < 1.0)) throw Error(ErrorCode::InvalidParameter, "d must lie in [0, 1)");
      edges_o.accept = std::min(edges_o.accept, g.tol * 10.0);
      BandOptions bo;
      bo.n_max = std::max(edges_nmax, edges_gap ? std::abs(*edges_gap) + 2 : 0);
      bo.workers = g.workers;
      const BandStructure bs = band_structure(c, g.mass, bo);
      std::vector<GapEdgeStates> found;
      if (edges_gap) {
        const Gap* gp = find_gap(bs, *edges_gap);
        if (!gp) throw Error(ErrorCode::GapUnresolved, "gap " + std::to_string(*edges_gap) + " not resolved");
        found.push_back({*gp, edge_states(c, g.mass, edges_d, edges_alpha, *gp, edges_o)});
      } else {
        found = edge_spectrum(bs, edges_d, edges_alpha, edges_o);
      }
      if (out.csv()) {
        CsvWriter w(os, {"below_band", "above_band", "gap_lo", "gap_hi", "eps", "decay", "residual",
                         "boundary_touching"});
        for (const auto& ge : found)
          for (const auto& s : ge.states)
            w.row({ge.gap.below_band, ge.gap.above_band, ge.gap.lo, ge.gap.hi, s.eps, s.decay, s.residual,
                   s.boundary_touching});
      } else {
        json gaps = json::array();
        for (const auto& ge : found) gaps.push_back(edge_state_json(ge.gap, ge.states));
        out.emit({{"coupling", c}, {"mass", g.mass}, {"d", edges_d}, {"alpha", edges_alpha}, {"gaps", gaps}});
      }
    } else if (*bbc) {
      const Family f = bbc_c.require_family();
      bbc_o.zak.workers = g.workers;
      if (std::isnan(bbc_c.theta)) throw Error(ErrorCode::InvalidParameter, "--theta is required");
      const BbcRecord r = bbc_verdict(f, {bbc_c.theta, bbc_c.m2}, g.mass, bbc_band, bbc_d, bbc_alpha, bbc_o);
      if (out.csv()) {
        CsvWriter w(os, {"family", "theta", "m2", "band", "d", "alpha", "zak", "translated_zak", "N_b", "N_a",
                         "sign", "verdict"});
        w.row({to_string(f), bbc_c.theta, bbc_c.m2, r.band, r.d, r.alpha, r.zak, r.translated_zak, r.n_below,
               r.n_above, r.sign, to_string(r.verdict)});
      } else {
        json j = r;
        j["family"] = to_string(f);
        j["theta"] = bbc_c.theta;
        j["m2"] = bbc_c.m2;
        j["mass"] = g.mass;
        out.emit(j);
      }
    } else if (*sweep_zak) {
      const Family f = parse_family(sz_family);
      sz_o.workers = g.workers;
      const auto pts = sweep_points(f, sz_theta, sz_m2);
      const auto rows = zak_sweep(f, pts, g.mass, sz_bands, sz_o);
      if (out.csv()) {
        CsvWriter w(os, {"family", "theta", "m2", "band", "phase", "phase_unwrapped", "convergence", "near_locus",
                         "flat_band", "error"});
        for (const auto& r : rows)
          w.row({sz_family, r.point.theta, r.point.m2, r.band, r.phase, r.phase_unwrapped, r.convergence,
                 r.near_locus, r.flat_band, r.error});
      } else {
        out.emit({{"family", sz_family}, {"mass", g.mass}, {"M", sz_o.zak.M}, {"rows", rows}});
      }
    } else if (*sweep_edges) {
      const Family f = parse_family(se_family);
      if (se_alpha_axis == se_d_axis) throw Error(ErrorCode::InvalidParameter, "choose --alpha-axis or --d-axis");
      se_o.axis = se_alpha_axis ? EdgeAxis::Alpha : EdgeAxis::D;
      se_o.fixed = se_alpha_axis ? se_d.value_or(0.5) : se_alpha.value_or(pi / 2);
      se_o.axis_values = half_open(parse_grid(se_axis, se_alpha_axis ? Grid{-pi, pi, 72} : Grid{0.0, 1.0, 20}));
      se_o.workers = g.workers;
      const auto pts = sweep_points(f, se_theta, se_m2);
      const auto rows = edge_sweep(f, pts, g.mass, se_o);
      if (out.csv()) {
        CsvWriter w(os, {"family", "theta", "m2", "d", "alpha", "gap_id", "gap_lo", "gap_hi", "N", "touching",
                         "near_locus", "error"});
        for (const auto& r : rows)
          w.row({se_family, r.point.theta, r.point.m2, r.d, r.alpha, r.gap_id, r.gap_lo, r.gap_hi, r.count,
                 r.touching, r.near_locus, r.error});
      } else {
        out.emit({{"family", se_family},
                  {"mass", g.mass},
                  {"axis", se_alpha_axis ? "alpha" : "d"},
                  {"fixed", se_o.fixed},
                  {"rows", rows}});
      }
    } else if (*ku) {
      Coupling c;
      Strengths s;
      if (!ku_g.empty()) {
        s.g = Eigen::Vector4d(ku_g[0], ku_g[1], ku_g[2], ku_g[3]);
        c = strengths_to_coupling(s.g);
      } else {
        c = ku_c.resolve();
        s = coupling_to_strengths(c);
      }
      if (out.csv()) {
        CsvWriter w(os, {"eta", "m0", "m1", "m2", "m3", "singular", "g0", "g1", "g2", "g3"});
        const double gn = s.singular ? nan_value : 0.0;
        w.row({c.eta, c.m0(), c.m1(), c.m2(), c.m3(), s.singular, s.g[0] + gn, s.g[1] + gn, s.g[2] + gn,
               s.g[3] + gn});
      } else {
        json j{{"coupling", c}, {"strengths", s}};
        if (!s.singular) j["delta"] = kurasov_delta(s.g);
        out.emit(j);
      }
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

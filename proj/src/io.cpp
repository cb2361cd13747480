#include "gdkp/io.hpp"

#include <charconv>
#include <cmath>

#include "gdkp/errors.hpp"

namespace gdkp {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorCode::InvalidParameter, std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

Eigen::Vector4d four_vector(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 4) {
    throw Error(ErrorCode::InvalidParameter, std::string("field '") + key + "' must hold 4 numbers");
  }
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v[i] = j.at(key)[i].get<double>();
  return v;
}

json vec(const Eigen::Vector4d& v) { return json::array({v[0], v[1], v[2], v[3]}); }

// JSON has no non-finite numbers; they become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Coupling coupling_from_json(const json& j) {
  if (j.contains("family")) {
    const Family f = parse_family(j.at("family").get<std::string>());
    const double m2 = j.contains("m2") ? number(j, "m2") : 0.0;
    return family_coupling(f, number(j, "theta"), m2);
  }
  return make_coupling(number(j, "eta"), four_vector(j, "m"));
}

Strengths strengths_from_json(const json& j) {
  Strengths s;
  if (j.value("singular", false)) {
    s.singular = true;
    return s;
  }
  s.g = four_vector(j, "g");
  return s;
}

void to_json(json& j, const Coupling& c) { j = {{"eta", c.eta}, {"m", vec(c.m)}}; }

void to_json(json& j, const Strengths& s) {
  j = {{"singular", s.singular}};
  if (!s.singular) j["g"] = vec(s.g);
}

void to_json(json& j, const SymmetryClass& s) {
  j = {{"label", s.label}, {"T", s.has_T}, {"C", s.has_C}, {"S", s.has_S}};
}

void to_json(json& j, const Gap& g) {
  j = {{"lo", g.lo}, {"hi", g.hi}, {"below_band", g.below_band}, {"above_band", g.above_band}};
}

void to_json(json& j, const BandStructure& b) {
  json bands = json::array();
  for (const auto& [n, eps] : b.bands) bands.push_back({{"band", n}, {"eps", eps}});
  json touch = json::array();
  for (const auto& t : b.touchings) touch.push_back({{"k", t.k}, {"eps", t.eps}});
  j = {{"coupling", b.coupling},
       {"mass", b.mass},
       {"symmetry", classify_symmetry(b.coupling)},
       {"permeability", to_string(permeability(b.coupling))},
       {"window", {b.eps_lo, b.eps_hi}},
       {"k", b.k_grid},
       {"bands", bands},
       {"gaps", b.gaps},
       {"touchings", touch}};
}

void to_json(json& j, const ZeroModeReport& z) {
  j = {{"count", z.count}, {"momenta", z.momenta}, {"G", z.G}, {"flat_zero_band", z.flat_zero_band}};
}

void to_json(json& j, const ZakResult& z) {
  j = {{"band", z.band},         {"phase", z.phase},       {"M", z.M},
       {"convergence", z.convergence}, {"flat_band", z.flat_band}, {"retried", z.retried},
       {"bracket", {z.bracket_lo, z.bracket_hi}}};
}

void to_json(json& j, const ZakSweepRow& r) {
  j = {{"theta", r.point.theta}, {"m2", r.point.m2},
       {"band", r.band},         {"phase", num(r.phase)},
       {"phase_unwrapped", num(r.phase_unwrapped)},
       {"convergence", num(r.convergence)},
       {"near_locus", r.near_locus}, {"flat_band", r.flat_band}};
  if (!r.error.empty()) j["error"] = r.error;
}

void to_json(json& j, const EdgeState& s) {
  j = {{"eps", s.eps},
       {"decay", s.decay},
       {"residual", s.residual},
       {"boundary_touching", s.boundary_touching}};
}

void to_json(json& j, const BbcRecord& r) {
  j = {{"band", r.band},       {"d", r.d},
       {"alpha", r.alpha},     {"zak", r.zak},
       {"translated_zak", r.translated_zak},
       {"N_b", r.n_below},     {"N_a", r.n_above},
       {"sign", r.sign},       {"touching", r.touching},
       {"verdict", to_string(r.verdict)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
}

void to_json(json& j, const EdgeSweepRow& r) {
  j = {{"theta", r.point.theta}, {"m2", r.point.m2},  {"d", r.d},
       {"alpha", r.alpha},       {"gap_id", r.gap_id}, {"gap_lo", r.gap_lo},
       {"gap_hi", r.gap_hi},     {"count", r.count},   {"touching", r.touching},
       {"near_locus", r.near_locus}};
  if (!r.error.empty()) j["error"] = r.error;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_double(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out_ << (v ? "true" : "false");
          } else if constexpr (std::is_same_v<T, std::string>) {
            // Quote when needed; errors may contain commas.
            if (v.find_first_of(",\"\n") == std::string::npos) {
              out_ << v;
            } else {
              out_ << '"';
              for (char ch : v) out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
              out_ << '"';
            }
          } else {
            out_ << v;
          }
        },
        cells[i]);
  }
  out_ << '\n';
}

}  // namespace gdkp

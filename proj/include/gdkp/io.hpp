#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gdkp/boundary.hpp"
#include "gdkp/coupling.hpp"
#include "gdkp/kurasov.hpp"
#include "gdkp/spectral.hpp"
#include "gdkp/zak.hpp"

namespace gdkp {

using json = nlohmann::json;

// Shortest round-trip text is not used: floats always carry 17 significant
// digits, locale independent.
std::string format_double(double x);

// Accepts {"eta": .., "m": [m0, m1, m2, m3]} or
// {"family": "D"|"BDI"|"AIII", "theta": .., "m2": ..}.
Coupling coupling_from_json(const json& j);

// Accepts {"g": [g0, g1, g2, g3]} or {"singular": true}.
Strengths strengths_from_json(const json& j);

void to_json(json& j, const Coupling& c);
void to_json(json& j, const Strengths& s);
void to_json(json& j, const SymmetryClass& s);
void to_json(json& j, const Gap& g);
void to_json(json& j, const BandStructure& b);
void to_json(json& j, const ZeroModeReport& z);
void to_json(json& j, const ZakResult& z);
void to_json(json& j, const ZakSweepRow& r);
void to_json(json& j, const EdgeState& s);
void to_json(json& j, const BbcRecord& r);
void to_json(json& j, const EdgeSweepRow& r);

// Writes doubles through format_double, so output is independent of the
// stream's locale and precision.
class CsvWriter {
 public:
  using Cell = std::variant<std::string, double, int, bool>;

  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace gdkp

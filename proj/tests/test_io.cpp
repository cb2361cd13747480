#include <doctest.h>

#include <sstream>

#include "gdkp/errors.hpp"
#include "gdkp/io.hpp"
#include "gdkp/numeric.hpp"

using namespace gdkp;

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(pi) == "3.1415926535897931");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-20) == "-2.4999999999999999e-20");
  CHECK(format_double(1e22) == "1e+22");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  for (double x : {0.3, 1e-300, -7.123456789012345, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("coupling_from_json") {
  const Coupling a = coupling_from_json(json::parse(R"({"family": "BDI", "theta": 0.3})"));
  CHECK(same_coupling(a, family_BDI(0.3)));
  const Coupling b = coupling_from_json(json::parse(R"({"family": "AIII", "theta": 0.3, "m2": 0.2})"));
  CHECK(same_coupling(b, family_AIII(0.3, 0.2)));
  const Coupling c = coupling_from_json(json::parse(R"({"eta": 0, "m": [0, 0, 0, 1]})"));
  CHECK(same_coupling(c, family_D(0)));
  CHECK_THROWS_AS(coupling_from_json(json::parse(R"({"eta": 0, "m": [1, 0]})")), Error);
  CHECK_THROWS_AS(coupling_from_json(json::parse(R"({"family": "BDI"})")), Error);
  CHECK_THROWS_AS(coupling_from_json(json::parse(R"({"family": "Q", "theta": 0})")), Error);

  // Round trip through the emitted form.
  const json j = family_AIII(-1.2, 0.6);
  CHECK(same_coupling(coupling_from_json(j), family_AIII(-1.2, 0.6)));
}

TEST_CASE("strengths_from_json") {
  CHECK(strengths_from_json(json::parse(R"({"singular": true})")).singular);
  const Strengths s = strengths_from_json(json::parse(R"({"g": [1, 2, 3, 4]})"));
  CHECK_FALSE(s.singular);
  CHECK(s.g[3] == 4.0);
  const json back = s;
  CHECK(back["g"][1] == 2.0);
}

TEST_CASE("non-finite values become null") {
  ZakSweepRow r;
  r.phase = std::nan("");
  r.error = "band 1 is not isolated";
  const json j = r;
  CHECK(j["phase"].is_null());
  CHECK(j["error"] == "band 1 is not isolated");
}

TEST_CASE("CsvWriter") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b", "c", "d"});
  w.row({std::string("x,y"), 0.1, 3, true});
  w.row({std::string("say \"hi\""), -1.0, -2, false});
  CHECK(out.str() == "a,b,c,d\n\"x,y\",0.10000000000000001,3,true\n\"say \"\"hi\"\"\",-1,-2,false\n");
  CHECK_THROWS(w.row({1.0}));
}

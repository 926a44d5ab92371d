#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "nuctrace/report.hpp"

using namespace nuctrace;

TEST_CASE("deterministic JSON dump") {
  Json j = Json::object();
  j["b"] = 0.1;
  j["a"] = Json::array({1, 2.5, nullptr});
  j["inf"] = kInf;
  j["nested"] = {{"x", Json::array({Json::array({1.0, -0.0})})}};
  const std::string expected =
      "{\n"
      "  \"b\": 0.10000000000000001,\n"
      "  \"a\": [1, 2.5, null],\n"
      "  \"inf\": null,\n"
      "  \"nested\": {\n"
      "    \"x\": [\n"
      "      [1, -0]\n"
      "    ]\n"
      "  }\n"
      "}\n";
  CHECK(dump_json(j) == expected);
}

TEST_CASE("CSV doubles") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("report always carries three sections") {
  Report r = make_report("trace", BlockWeight::bracket, std::nullopt);
  const Json j = r.to_json();
  CHECK(j["header"]["tool"] == "nuctrace");
  CHECK(j["header"]["schema_version"] == 1);
  CHECK(j["header"]["block_weight"] == "bracket");
  CHECK(j["header"]["timestamp"].is_null());
  CHECK(j["diagnostics"]["warnings"].is_array());
  r.warn("w");
  CHECK(r.to_json()["diagnostics"]["warnings"].size() == 1);
}

TEST_CASE("periodic function files round-trip") {
  const auto f = PeriodicFunction::sample(2, 6, [](std::array<double, 2> x) { return Complex{x[0], x[1]}; });
  const auto g = periodic_function_from_json(periodic_function_to_json(f));
  CHECK(g.values() == f.values());
  CHECK_THROWS_AS(periodic_function_from_json(Json::parse(R"({"dim": 1, "grid_size": 4, "values": [1, 2]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(periodic_function_from_json(Json::parse(R"({"dim": 3, "grid_size": 1, "values": [1]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(read_periodic_function("/nonexistent/f.json"), InvalidArgument);
}

TEST_CASE("sampled symbol files round-trip") {
  const FrequencyLattice l(1, 3);
  const auto a = materialize(Symbol::modulated(1, Profile::bracket_power, -2.0, 2.0), 16, l);
  const auto b = sampled_symbol_from_json(sampled_symbol_to_json(a));
  for (std::size_t i = 0; i < 16; ++i)
    for (auto xi : l.points()) CHECK(a.sample(i, 16, xi) == b.sample(i, 16, xi));
  CHECK_THROWS_AS(sampled_symbol_to_json(Symbol::heat(1, 1.0)), InvalidArgument);
}

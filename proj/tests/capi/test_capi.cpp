// Exercises the shared library strictly through its C surface: every call
// goes through otrl.h, and outputs are inspected as JSON text.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <thread>

#include <json.hpp>

#include "otrl/otrl.h"

using nlohmann::json;

namespace {

constexpr const char* kSpaceQ = R"({"kind":"interval_q","D":10})";
constexpr const char* kDiracQ = R"({"atoms":[{"point":"q","w":1}]})";
constexpr const char* kDiracZero = R"({"atoms":[{"point":{"x":0},"w":1}]})";

// RAII wrappers so failed REQUIREs cannot leak handles.
struct Space {
  otrl_space* ptr = nullptr;
  explicit Space(const char* json_text) {
    REQUIRE(otrl_space_parse(json_text, &ptr) == OTRL_OK);
  }
  ~Space() { otrl_space_free(ptr); }
};

struct Measure {
  otrl_measure* ptr = nullptr;
  Measure() = default;
  Measure(const char* json_text, const otrl_space* hint) {
    REQUIRE(otrl_measure_parse(json_text, hint, &ptr) == OTRL_OK);
  }
  Measure(const Measure&) = delete;
  Measure& operator=(const Measure&) = delete;
  ~Measure() { otrl_measure_free(ptr); }
};

// Takes ownership of a char* out parameter.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string copy(s);
  otrl_string_free(s);
  return copy;
}

std::string last_error() {
  const char* msg = otrl_last_error();
  return msg == nullptr ? std::string() : std::string(msg);
}

}  // namespace

TEST_CASE("version and null-safety basics") {
  CHECK(std::strcmp(otrl_version(), "1.0.0") == 0);
  otrl_string_free(nullptr);
  otrl_space_free(nullptr);
  otrl_measure_free(nullptr);
  otrl_space* space = nullptr;
  CHECK(otrl_space_parse(nullptr, &space) == OTRL_ERR_INVALID_ARGUMENT);
  CHECK(otrl_space_parse(kSpaceQ, nullptr) == OTRL_ERR_INVALID_ARGUMENT);
  CHECK(last_error().find("null") != std::string::npos);
}

TEST_CASE("spaces round-trip through JSON") {
  for (const char* text : {R"({"kind":"interval"})", kSpaceQ, R"({"kind":"plane"})",
                           R"({"kind":"plane_q"})"}) {
    Space space(text);
    char* out = nullptr;
    REQUIRE(otrl_space_to_json(space.ptr, &out) == OTRL_OK);
    CHECK(json::parse(take(out)) == json::parse(text));
  }
}

TEST_CASE("parse failures carry diagnostics and the right status") {
  otrl_space* space = nullptr;
  CHECK(otrl_space_parse(R"({"kind":)", &space) == OTRL_ERR_PARSE);
  // nlohmann reports "line 1, column ..." for truncated input
  CHECK(last_error().find("line 1") != std::string::npos);
  CHECK(otrl_space_parse(R"({"kind":"torus"})", &space) == OTRL_ERR_PARSE);
  CHECK(last_error().find("torus") != std::string::npos);
  CHECK(otrl_space_parse(R"({"kind":"interval_q"})", &space) == OTRL_ERR_PARSE);
  CHECK(otrl_space_parse(R"({"kind":"interval","D":3})", &space) == OTRL_ERR_PARSE);
  CHECK(otrl_space_parse(R"({"kind":"interval_q","D":0.5})", &space) ==
        OTRL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("measures parse against hints and serialize back") {
  Space space(kSpaceQ);
  Measure mu(kDiracQ, space.ptr);
  char* out = nullptr;
  REQUIRE(otrl_measure_to_json(mu.ptr, &out) == OTRL_OK);
  const json round = json::parse(take(out));
  CHECK(round["space"]["kind"] == "interval_q");
  CHECK(round["atoms"].size() == 1);
  CHECK(round["atoms"][0]["point"] == "q");
  CHECK(round["atoms"][0]["w"] == 1.0);

  // embedded space wins when no hint is given; conflicting hint is rejected
  const std::string embedded =
      std::string(R"({"space":{"kind":"interval"},"atoms":[{"point":{"x":0.5},"w":1}]})");
  otrl_measure* raw = nullptr;
  REQUIRE(otrl_measure_parse(embedded.c_str(), nullptr, &raw) == OTRL_OK);
  otrl_measure_free(raw);
  CHECK(otrl_measure_parse(embedded.c_str(), space.ptr, &raw) == OTRL_ERR_DOMAIN);
  CHECK(otrl_measure_parse(kDiracQ, nullptr, &raw) == OTRL_ERR_PARSE);

  // domain violations in valid JSON: mass, sign, support
  CHECK(otrl_measure_parse(R"({"atoms":[{"point":"q","w":0.9}]})", space.ptr,
                           &raw) == OTRL_ERR_DOMAIN);
  CHECK(otrl_measure_parse(
            R"({"atoms":[{"point":"q","w":1.5},{"point":{"x":0},"w":-0.5}]})",
            space.ptr, &raw) == OTRL_ERR_DOMAIN);
  // a coordinate outside [0,1] dies at point construction ...
  CHECK(otrl_measure_parse(R"({"atoms":[{"point":{"x":2},"w":1}]})", space.ptr,
                           &raw) == OTRL_ERR_INVALID_ARGUMENT);
  // ... while a well-formed point of the wrong kind is a support violation
  CHECK(otrl_measure_parse(R"({"atoms":[{"point":{"v":[0,0]},"w":1}]})", space.ptr,
                           &raw) == OTRL_ERR_DOMAIN);
}

TEST_CASE("distances flow through the C boundary") {
  Space space(kSpaceQ);
  Measure mu(kDiracQ, space.ptr);
  Measure nu(kDiracZero, space.ptr);
  char* out = nullptr;
  REQUIRE(otrl_distance(mu.ptr, nu.ptr, 1.0, &out) == OTRL_OK);
  const json result = json::parse(take(out));
  CHECK(result["distance"] == 10.0);
  CHECK(result["cost"] == 10.0);
  CHECK(result["plan"] == json::parse("[[0,0,1]]"));

  CHECK(otrl_distance(mu.ptr, nu.ptr, 0.5, &out) == OTRL_ERR_INVALID_ARGUMENT);
  Space plane(R"({"kind":"plane"})");
  Measure origin(R"({"atoms":[{"point":{"v":[0,0]},"w":1}]})", plane.ptr);
  CHECK(otrl_distance(mu.ptr, origin.ptr, 1.0, &out) == OTRL_ERR_DOMAIN);
  CHECK(last_error().find("different spaces") != std::string::npos);
}

TEST_CASE("named maps apply and reject unknown names") {
  Space interval(R"({"kind":"interval"})");
  Measure mid(R"({"atoms":[{"point":{"x":0.5},"w":1}]})", interval.ptr);
  otrl_measure* image = nullptr;
  REQUIRE(otrl_map_apply("flip", mid.ptr, &image) == OTRL_OK);
  char* out = nullptr;
  REQUIRE(otrl_measure_to_json(image, &out) == OTRL_OK);
  otrl_measure_free(image);
  const json flipped = json::parse(take(out));
  CHECK(flipped["atoms"][0]["point"]["x"] == 0.0);
  CHECK(flipped["atoms"][0]["w"] == 0.5);
  CHECK(flipped["atoms"][1]["point"]["x"] == 1.0);
  CHECK(flipped["atoms"][1]["w"] == 0.5);

  REQUIRE(otrl_map_apply("trivial:r", mid.ptr, &image) == OTRL_OK);
  otrl_measure_free(image);

  CHECK(otrl_map_apply("nope", mid.ptr, &image) == OTRL_ERR_INVALID_ARGUMENT);
  CHECK(last_error().find("unknown map") != std::string::npos);
  CHECK(otrl_map_apply("kloeckner:abc", mid.ptr, &image) == OTRL_ERR_INVALID_ARGUMENT);
  // a plane-only map on an interval measure is a domain error, not a bad name
  CHECK(otrl_map_apply("kloeckner:1.5", mid.ptr, &image) == OTRL_ERR_DOMAIN);
  CHECK(otrl_map_apply("project", mid.ptr, &image) == OTRL_ERR_DOMAIN);
}

TEST_CASE("verification reports cross the boundary with the pass flag") {
  char* report_text = nullptr;
  int all_pass = -1;
  REQUIRE(otrl_verify("thm2", 10.0, 42, 60, &report_text, &all_pass) == OTRL_OK);
  const std::string first = take(report_text);
  CHECK(all_pass == 1);
  const json report = json::parse(first);
  CHECK(report["suite"] == "thm2");
  CHECK(report["pass"] == true);
  CHECK(report["suites"].size() == 2);

  // the asserted cross-slice grid keeps thm1 red, via the flag not the status
  REQUIRE(otrl_verify("thm1", 10.0, 42, 60, &report_text, &all_pass) == OTRL_OK);
  CHECK(all_pass == 0);
  const json thm1 = json::parse(take(report_text));
  CHECK(thm1["pass"] == false);

  // same configuration, byte-identical report
  REQUIRE(otrl_verify("thm2", 10.0, 42, 60, &report_text, &all_pass) == OTRL_OK);
  CHECK(take(report_text) == first);

  CHECK(otrl_verify("bogus", 10.0, 42, 60, &report_text, &all_pass) ==
        OTRL_ERR_INVALID_ARGUMENT);
  CHECK(otrl_verify("thm2", 1.0, 42, 60, &report_text, &all_pass) ==
        OTRL_ERR_INVALID_ARGUMENT);
  CHECK(otrl_verify("thm2", 10.0, 42, 0, &report_text, &all_pass) ==
        OTRL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("schemas are served by name") {
  char* out = nullptr;
  for (const char* name : {"ground_space", "measure", "suite_report"}) {
    REQUIRE(otrl_schema(name, &out) == OTRL_OK);
    const json schema = json::parse(take(out));
    CHECK(schema.contains("$schema"));
  }
  CHECK(otrl_schema("bogus", &out) == OTRL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("error messages are per-thread") {
  otrl_space* space = nullptr;
  CHECK(otrl_space_parse(R"({"kind":"torus"})", &space) == OTRL_ERR_PARSE);
  const std::string mine = last_error();
  std::string theirs;
  std::thread worker([&] {
    otrl_measure* raw = nullptr;
    Space hint(kSpaceQ);
    CHECK(otrl_measure_parse(R"({"atoms":[{"point":"q","w":0.5}]})", hint.ptr, &raw) ==
          OTRL_ERR_DOMAIN);
    theirs = last_error();
  });
  worker.join();
  CHECK(last_error() == mine);
  CHECK(theirs.find("sum to 1") != std::string::npos);
  CHECK(mine.find("torus") != std::string::npos);
}

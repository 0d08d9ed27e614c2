#include "otrl/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace otrl::jsonio {

namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump_impl(const Json& v, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent) * static_cast<std::size_t>(d), ' ');
    }
  };
  switch (v.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      require(std::isfinite(d), Errc::internal, "cannot serialize a non-finite number");
      append_number(out, d);
      break;
    }
    case Json::value_t::string:
      out += Json(v.get_ref<const std::string&>()).dump();  // quoted and escaped
      break;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_impl(item, out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_impl(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      fail(Errc::internal, "unsupported JSON value type");
  }
}

const Json& expect_member(const Json& j, const char* key, const char* what) {
  require(j.is_object(), Errc::parse, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  require(it != j.end(), Errc::parse,
          std::string(what) + " is missing the required key \"" + key + "\"");
  return *it;
}

double expect_number(const Json& j, const char* what) {
  require(j.is_number(), Errc::parse, std::string(what) + " must be a number");
  return j.get<double>();
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    require(known, Errc::parse,
            std::string(what) + " has an unknown key \"" + it.key() + "\"");
  }
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse, e.what());  // carries the line/column diagnostic
  }
}

std::string dump(const Json& value, int indent) {
  std::string out;
  dump_impl(value, out, indent, 0);
  return out;
}

Json space_to_json(const GroundSpace& space) {
  Json j;
  switch (space.kind()) {
    case GroundSpace::Kind::Interval:
      j["kind"] = "interval";
      break;
    case GroundSpace::Kind::IntervalPlusQ:
      j["kind"] = "interval_q";
      j["D"] = space.far_distance();
      break;
    case GroundSpace::Kind::Plane:
      j["kind"] = "plane";
      break;
    case GroundSpace::Kind::PlanePlusQ:
      j["kind"] = "plane_q";
      break;
  }
  return j;
}

GroundSpace space_from_json(const Json& j) {
  const Json& kind = expect_member(j, "kind", "a ground space");
  require(kind.is_string(), Errc::parse, "the space \"kind\" must be a string");
  const std::string name = kind.get<std::string>();
  reject_unknown_keys(j, {"kind", "D"}, "a ground space");
  const bool has_d = j.find("D") != j.end();
  if (name == "interval_q") {
    require(has_d, Errc::parse, "an interval_q space requires the far distance \"D\"");
    return GroundSpace::interval_plus_q(expect_number(j.at("D"), "the far distance \"D\""));
  }
  require(!has_d, Errc::parse, "\"D\" is only meaningful for interval_q spaces");
  if (name == "interval") return GroundSpace::interval();
  if (name == "plane") return GroundSpace::plane();
  if (name == "plane_q") return GroundSpace::plane_plus_q();
  fail(Errc::parse, "unknown space kind \"" + name +
                        "\" (expected interval, interval_q, plane, or plane_q)");
}

Json point_to_json(const GroundPoint& point) {
  switch (point.kind()) {
    case GroundPoint::Kind::Q:
      return Json("q");
    case GroundPoint::Kind::Interval: {
      Json j;
      j["x"] = point.coordinate();
      return j;
    }
    case GroundPoint::Kind::Plane: {
      Json j;
      j["v"] = Json::array({point.position().x, point.position().y});
      return j;
    }
  }
  fail(Errc::internal, "unknown point kind");
}

GroundPoint point_from_json(const Json& j) {
  if (j.is_string()) {
    require(j.get<std::string>() == "q", Errc::parse,
            "the only string-valued point is \"q\"");
    return GroundPoint::q();
  }
  require(j.is_object(), Errc::parse, "a point must be \"q\" or a JSON object");
  if (j.find("x") != j.end()) {
    reject_unknown_keys(j, {"x"}, "an interval point");
    return GroundPoint::interval(expect_number(j.at("x"), "the coordinate \"x\""));
  }
  if (j.find("v") != j.end()) {
    const Json& v = j.at("v");
    require(v.is_array() && v.size() == 2, Errc::parse,
            "a plane point needs \"v\": [x, y]");
    reject_unknown_keys(j, {"v"}, "a plane point");
    return GroundPoint::plane(expect_number(v.at(0), "the first coordinate"),
                              expect_number(v.at(1), "the second coordinate"));
  }
  fail(Errc::parse, "a point must be \"q\", {\"x\": number}, or {\"v\": [x, y]}");
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json j;
  j["space"] = space_to_json(mu.space());
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json atom;
    atom["point"] = point_to_json(a.point);
    atom["w"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

DiscreteMeasure measure_from_json(const Json& j, const GroundSpace* space_hint) {
  require(j.is_object(), Errc::parse, "a measure must be a JSON object");
  reject_unknown_keys(j, {"space", "atoms"}, "a measure");
  const bool has_space = j.find("space") != j.end();
  require(has_space || space_hint != nullptr, Errc::parse,
          "the measure omits \"space\" and no space was supplied externally");
  GroundSpace space = has_space ? space_from_json(j.at("space")) : *space_hint;
  if (has_space && space_hint != nullptr) {
    require(space == *space_hint, Errc::space_mismatch,
            "the measure's \"space\" disagrees with the externally supplied space");
  }
  const Json& atoms_json = expect_member(j, "atoms", "a measure");
  require(atoms_json.is_array(), Errc::parse, "\"atoms\" must be an array");
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(atoms_json.size());
  for (const Json& entry : atoms_json) {
    require(entry.is_object(), Errc::parse, "each atom must be a JSON object");
    reject_unknown_keys(entry, {"point", "w"}, "an atom");
    atoms.push_back({point_from_json(expect_member(entry, "point", "an atom")),
                     expect_number(expect_member(entry, "w", "an atom"), "the weight \"w\"")});
  }
  return DiscreteMeasure(std::move(space), std::move(atoms),
                         DiscreteMeasure::kInputMassTol);
}

Json result_to_json(const OTResult& result) {
  Json j;
  j["distance"] = result.distance;
  j["cost"] = result.cost;
  Json plan = Json::array();
  for (std::size_t i = 0; i < result.plan.rows(); ++i) {
    for (std::size_t k = 0; k < result.plan.cols(); ++k) {
      const double w = result.plan.at(i, k);
      if (w != 0.0) {
        plan.push_back(Json::array(
            {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k), w}));
      }
    }
  }
  j["plan"] = std::move(plan);
  return j;
}

namespace {

Json check_to_json(const Check& check, const std::string& anchor_prefix) {
  Json j;
  j["desc"] = check.desc;
  j["anchor"] = anchor_prefix + check.anchor;
  j["computed"] = Json(check.computed);
  j["expected"] = Json(check.expected);
  j["tol"] = check.tol;
  j["pass"] = check.pass;
  return j;
}

}  // namespace

Json report_to_json(const SuiteReport& report) {
  Json j;
  j["suite"] = report.suite;
  Json checks = Json::array();
  for (const Check& c : report.checks) checks.push_back(check_to_json(c, ""));
  j["checks"] = std::move(checks);
  j["pass"] = report.pass;
  return j;
}

Json aggregate_to_json(const std::string& group, const AggregateReport& aggregate) {
  Json j;
  j["suite"] = group;
  Json checks = Json::array();
  for (const SuiteReport& suite : aggregate.suites) {
    for (const Check& c : suite.checks) {
      checks.push_back(check_to_json(c, suite.suite + "/"));
    }
  }
  j["checks"] = std::move(checks);
  j["pass"] = aggregate.pass;
  Json summary = Json::array();
  for (const SuiteReport& suite : aggregate.suites) {
    Json row;
    row["suite"] = suite.suite;
    row["pass"] = suite.pass;
    row["failed"] = suite.failed_count();
    summary.push_back(std::move(row));
  }
  j["suites"] = std::move(summary);
  return j;
}

const char* schema_text(const std::string& name) {
  static const char* kGroundSpace = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "GroundSpace",
  "type": "object",
  "properties": {
    "kind": {"enum": ["interval", "interval_q", "plane", "plane_q"]},
    "D": {"type": "number", "exclusiveMinimum": 1}
  },
  "required": ["kind"],
  "additionalProperties": false,
  "allOf": [
    {
      "if": {"properties": {"kind": {"const": "interval_q"}}},
      "then": {"required": ["D"]},
      "else": {"not": {"required": ["D"]}}
    }
  ]
})";
  static const char* kMeasure = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "DiscreteMeasure",
  "$comment": "weights must sum to 1 within 1e-9; \"space\" may be omitted when an external space is supplied",
  "type": "object",
  "properties": {
    "space": {"$ref": "#/definitions/ground_space"},
    "atoms": {
      "type": "array",
      "minItems": 1,
      "items": {
        "type": "object",
        "properties": {
          "point": {
            "oneOf": [
              {"const": "q"},
              {
                "type": "object",
                "properties": {"x": {"type": "number", "minimum": 0, "maximum": 1}},
                "required": ["x"],
                "additionalProperties": false
              },
              {
                "type": "object",
                "properties": {
                  "v": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
                },
                "required": ["v"],
                "additionalProperties": false
              }
            ]
          },
          "w": {"type": "number", "exclusiveMinimum": 0}
        },
        "required": ["point", "w"],
        "additionalProperties": false
      }
    }
  },
  "required": ["atoms"],
  "additionalProperties": false,
  "definitions": {
    "ground_space": {
      "type": "object",
      "properties": {
        "kind": {"enum": ["interval", "interval_q", "plane", "plane_q"]},
        "D": {"type": "number", "exclusiveMinimum": 1}
      },
      "required": ["kind"],
      "additionalProperties": false
    }
  }
})";
  static const char* kSuiteReport = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "SuiteReport",
  "type": "object",
  "properties": {
    "suite": {"type": "string"},
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "properties": {
          "desc": {"type": "string"},
          "anchor": {"type": "string"},
          "computed": {"type": "array", "items": {"type": "number"}},
          "expected": {"type": "array", "items": {"type": "number"}},
          "tol": {"type": "number"},
          "pass": {"type": "boolean"}
        },
        "required": ["desc", "anchor", "computed", "expected", "tol", "pass"],
        "additionalProperties": false
      }
    },
    "pass": {"type": "boolean"}
  },
  "required": ["suite", "checks", "pass"],
  "additionalProperties": true
})";
  if (name == "ground_space") return kGroundSpace;
  if (name == "measure") return kMeasure;
  if (name == "suite_report") return kSuiteReport;
  fail(Errc::invalid_argument, "unknown schema \"" + name +
                                   "\" (expected ground_space, measure, or suite_report)");
}

}  // namespace otrl::jsonio

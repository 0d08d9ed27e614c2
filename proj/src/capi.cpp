#include "otrl/otrl.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "otrl/json_io.hpp"
#include "otrl/maps.hpp"
#include "otrl/rigidity.hpp"

struct otrl_space {
  otrl::GroundSpace value;
};

struct otrl_measure {
  otrl::DiscreteMeasure value;
};

namespace {

thread_local std::string t_last_error;

otrl_status status_from(otrl::Errc code) {
  switch (code) {
    case otrl::Errc::parse:
      return OTRL_ERR_PARSE;
    case otrl::Errc::invalid_argument:
    case otrl::Errc::instance_too_large:
      return OTRL_ERR_INVALID_ARGUMENT;
    case otrl::Errc::internal:
      return OTRL_ERR_INTERNAL;
    default:
      return OTRL_ERR_DOMAIN;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  otrl::require(out != nullptr, otrl::Errc::internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
otrl_status guarded(Fn&& fn) {
  try {
    fn();
    return OTRL_OK;
  } catch (const otrl::Error& e) {
    t_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return OTRL_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return OTRL_ERR_INTERNAL;
  }
}

otrl_status arg_error(const char* msg) {
  t_last_error = msg;
  return OTRL_ERR_INVALID_ARGUMENT;
}

otrl::MeasureMap map_by_name(const std::string& name, const otrl::GroundSpace& space) {
  if (name == "trivial:id") return otrl::lift(space, otrl::BaseIsometry::identity());
  if (name == "trivial:r") return otrl::lift(space, otrl::BaseIsometry::reflect_interval());
  if (name == "flip") return otrl::flip_map();
  if (name == "project") return otrl::projection_map(space);
  constexpr const char* kPrefix = "kloeckner:";
  if (name.rfind(kPrefix, 0) == 0) {
    const std::string arg = name.substr(std::strlen(kPrefix));
    char* end = nullptr;
    const double theta = std::strtod(arg.c_str(), &end);
    otrl::require(!arg.empty() && end == arg.c_str() + arg.size(), otrl::Errc::invalid_argument,
                  "kloeckner:<theta> needs a numeric angle, got \"" + arg + "\"");
    return otrl::kloeckner_map(theta);
  }
  otrl::fail(otrl::Errc::invalid_argument,
             "unknown map \"" + name +
                 "\" (expected trivial:id, trivial:r, flip, kloeckner:<theta>, or project)");
}

}  // namespace

extern "C" {

const char* otrl_version(void) { return "1.0.0"; }

const char* otrl_last_error(void) { return t_last_error.c_str(); }

void otrl_string_free(char* s) { std::free(s); }

otrl_status otrl_space_parse(const char* json, otrl_space** out) {
  if (json == nullptr || out == nullptr) return arg_error("otrl_space_parse: null argument");
  *out = nullptr;
  return guarded([&] {
    auto space = otrl::jsonio::space_from_json(otrl::jsonio::parse(json));
    *out = new otrl_space{std::move(space)};
  });
}

otrl_status otrl_space_to_json(const otrl_space* space, char** out_json) {
  if (space == nullptr || out_json == nullptr)
    return arg_error("otrl_space_to_json: null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = copy_string(otrl::jsonio::dump(otrl::jsonio::space_to_json(space->value)));
  });
}

void otrl_space_free(otrl_space* space) { delete space; }

otrl_status otrl_measure_parse(const char* json, const otrl_space* space_hint,
                               otrl_measure** out) {
  if (json == nullptr || out == nullptr) return arg_error("otrl_measure_parse: null argument");
  *out = nullptr;
  return guarded([&] {
    const otrl::GroundSpace* hint = space_hint != nullptr ? &space_hint->value : nullptr;
    auto mu = otrl::jsonio::measure_from_json(otrl::jsonio::parse(json), hint);
    *out = new otrl_measure{std::move(mu)};
  });
}

otrl_status otrl_measure_to_json(const otrl_measure* mu, char** out_json) {
  if (mu == nullptr || out_json == nullptr)
    return arg_error("otrl_measure_to_json: null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = copy_string(otrl::jsonio::dump(otrl::jsonio::measure_to_json(mu->value)));
  });
}

void otrl_measure_free(otrl_measure* mu) { delete mu; }

otrl_status otrl_distance(const otrl_measure* mu, const otrl_measure* nu, double p,
                          char** out_json) {
  if (mu == nullptr || nu == nullptr || out_json == nullptr)
    return arg_error("otrl_distance: null argument");
  *out_json = nullptr;
  return guarded([&] {
    auto result = otrl::solve_exact(mu->value, nu->value, p);
    *out_json = copy_string(otrl::jsonio::dump(otrl::jsonio::result_to_json(result)));
  });
}

otrl_status otrl_map_apply(const char* name, const otrl_measure* mu, otrl_measure** out) {
  if (name == nullptr || mu == nullptr || out == nullptr)
    return arg_error("otrl_map_apply: null argument");
  *out = nullptr;
  return guarded([&] {
    auto map = map_by_name(name, mu->value.space());
    *out = new otrl_measure{map(mu->value)};
  });
}

otrl_status otrl_verify(const char* group, double far_distance, uint64_t seed, int samples,
                        char** out_report_json, int* out_all_pass) {
  if (group == nullptr || out_report_json == nullptr || out_all_pass == nullptr)
    return arg_error("otrl_verify: null argument");
  *out_report_json = nullptr;
  *out_all_pass = 0;
  return guarded([&] {
    otrl::VerifyConfig config;
    config.far_distance = far_distance;
    config.seed = seed;
    config.samples = samples;
    auto aggregate = otrl::run_suites(group, config);
    *out_report_json =
        copy_string(otrl::jsonio::dump(otrl::jsonio::aggregate_to_json(group, aggregate), 2));
    *out_all_pass = aggregate.pass ? 1 : 0;
  });
}

otrl_status otrl_schema(const char* name, char** out_json) {
  if (name == nullptr || out_json == nullptr) return arg_error("otrl_schema: null argument");
  *out_json = nullptr;
  return guarded([&] { *out_json = copy_string(otrl::jsonio::schema_text(name)); });
}

}  // extern "C"

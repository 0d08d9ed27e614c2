#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "otrl/otrl.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Any configuration or input problem; reported on stderr with exit 2.
struct CliError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot read \"" + path + "\""};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --space accepts an inline JSON object or a path to one.
std::string space_text(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return spec;
  return read_file(spec);
}

struct SpaceHandle {
  otrl_space* ptr = nullptr;
  ~SpaceHandle() { otrl_space_free(ptr); }
};

struct MeasureHandle {
  otrl_measure* ptr = nullptr;
  ~MeasureHandle() { otrl_measure_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { otrl_string_free(ptr); }
};

void check(otrl_status status) {
  if (status != OTRL_OK) throw CliError{otrl_last_error()};
}

std::uint64_t parse_seed(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  const bool digits = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
  if (!digits || end != text.c_str() + text.size() || errno != 0) {
    throw CliError{"OTRL_SEED must be a nonnegative integer, got \"" + text + "\""};
  }
  return value;
}

int run_dist(const std::string& space_spec, const std::string& mu_path,
             const std::string& nu_path, double p) {
  if (p < 1.0) throw CliError{"p must be ≥ 1"};
  SpaceHandle space;
  if (!space_spec.empty()) {
    check(otrl_space_parse(space_text(space_spec).c_str(), &space.ptr));
  }
  MeasureHandle mu;
  MeasureHandle nu;
  check(otrl_measure_parse(read_file(mu_path).c_str(), space.ptr, &mu.ptr));
  check(otrl_measure_parse(read_file(nu_path).c_str(), space.ptr, &nu.ptr));
  StringHandle out;
  check(otrl_distance(mu.ptr, nu.ptr, p, &out.ptr));
  std::cout << out.ptr << "\n";
  return kExitPass;
}

int run_map(const std::string& name, const std::string& mu_path) {
  MeasureHandle mu;
  check(otrl_measure_parse(read_file(mu_path).c_str(), nullptr, &mu.ptr));
  MeasureHandle image;
  check(otrl_map_apply(name.c_str(), mu.ptr, &image.ptr));
  StringHandle out;
  check(otrl_measure_to_json(image.ptr, &out.ptr));
  std::cout << out.ptr << "\n";
  return kExitPass;
}

int run_verify(const std::string& group, double far_distance, std::uint64_t seed, int samples,
               const std::string& json_path) {
  StringHandle report;
  int all_pass = 0;
  check(otrl_verify(group.c_str(), far_distance, seed, samples, &report.ptr, &all_pass));
  if (json_path.empty()) {
    std::cout << report.ptr << "\n";
  } else {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw CliError{"cannot write \"" + json_path + "\""};
    out << report.ptr << "\n";
    out.flush();
    if (!out.good()) throw CliError{"cannot write \"" + json_path + "\""};
  }
  return all_pass ? kExitPass : kExitCheckFailed;
}

int run_schema(const std::string& name) {
  if (!name.empty()) {
    StringHandle out;
    check(otrl_schema(name.c_str(), &out.ptr));
    std::cout << out.ptr << "\n";
    return kExitPass;
  }
  const char* names[] = {"ground_space", "measure", "suite_report"};
  std::cout << "{\n";
  for (int i = 0; i < 3; ++i) {
    StringHandle out;
    check(otrl_schema(names[i], &out.ptr));
    std::cout << "\"" << names[i] << "\": " << out.ptr << (i < 2 ? ",\n" : "\n");
  }
  std::cout << "}\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact optimal transport distances, measure maps, and verification suites"};
  app.require_subcommand(1);

  std::string space_spec;
  std::string mu_path;
  std::string nu_path;
  double p = 1.0;
  CLI::App* dist = app.add_subcommand("dist", "exact W_p distance between two measures");
  dist->add_option("--space", space_spec,
                   "ground space as a JSON literal or a file; required when the measure "
                   "files omit their \"space\" member");
  dist->add_option("--mu", mu_path, "first measure (JSON file)")->required();
  dist->add_option("--nu", nu_path, "second measure (JSON file)")->required();
  dist->add_option("--p", p, "cost exponent, at least 1")->required();

  std::string map_name;
  std::string map_mu_path;
  CLI::App* map_cmd = app.add_subcommand("map", "apply a named measure map");
  map_cmd
      ->add_option("--name", map_name,
                   "one of trivial:id, trivial:r, flip, kloeckner:<theta>, project")
      ->required();
  map_cmd->add_option("--mu", map_mu_path, "measure to transform (JSON file)")->required();

  std::string group;
  double far_distance = 10.0;
  std::uint64_t seed = 42;
  int samples = 200;
  std::string json_path;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite group");
  verify->add_option("group", group, "all, thm1, thm2, duality, geodesics, or slices")
      ->required();
  verify->add_option("--D", far_distance, "far distance of the interval-plus-q space (> 1)");
  verify->add_option("--seed", seed, "base seed for the sample generators");
  verify->add_option("--samples", samples, "random draws per sampled check");
  verify->add_option("--json", json_path, "write the report here instead of standard output");

  std::string schema_name;
  CLI::App* schema_cmd = app.add_subcommand("schema", "print the built-in JSON schemas");
  schema_cmd->add_option("name", schema_name, "ground_space, measure, or suite_report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (const char* env = std::getenv("OTRL_SEED")) seed = parse_seed(env);
      return run_verify(group, far_distance, seed, samples, json_path);
    }
    if (dist->parsed()) return run_dist(space_spec, mu_path, nu_path, p);
    if (map_cmd->parsed()) return run_map(map_name, map_mu_path);
    if (schema_cmd->parsed()) return run_schema(schema_name);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

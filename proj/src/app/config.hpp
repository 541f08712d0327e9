#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "grouplat/group.hpp"
#include "jordan/jordan.hpp"
#include "modrep/module.hpp"

namespace pib::app {

using Json = nlohmann::ordered_json;

struct JobConfig {
  Json group;              // shorthand string, file path, or inline object
  unsigned prime = 0;      // 0: the matrix prime of a matrix group
  Json module = "regular";
  std::optional<unsigned> j;
  Method method = Method::Exact;
  int degree_bound = -1;
  std::size_t samples = 200;
  unsigned ext_cap = 3;
  std::uint64_t seed = 1;
  std::string out;
  unsigned jobs = 1;
  std::filesystem::path base_dir = ".";  // relative file references resolve here
};

// TOML or JSON by extension; throws InvalidInput on parse errors
JobConfig load_config(const std::filesystem::path& path);
// reads a JSON or TOML file into a JSON value
Json read_data_file(const std::filesystem::path& path);

// shorthands: klein4, heisenberg(3), elementary_abelian(3,2), cyclic(4), dihedral(4),
// alternating(4), symmetric(3); objects {"builtin": name, "args": [...]},
// {"table": [[...]], "generators": [...]}, {"permutations": [[...]]},
// {"matrices": [[row-major]], "n": n, "p": p}; or a path to such a file
GroupPtr build_group(const Json& spec, const std::filesystem::path& base_dir = ".");

// shorthands: trivial, regular (free), natural, sym(m), radical(k) for kG/J^k,
// cyclic(g,...) for kG/(g-e,...); objects {"dim": m, "generators": [[row-major]]}; or a path
ModulePtr build_module(const Json& spec, GroupPtr G, unsigned p, const std::filesystem::path& base_dir = ".");

// string override of one config field (CLI flags, C API); group/module values may be
// shorthands, file paths or inline JSON
void apply_setting(JobConfig& cfg, const std::string& key, const std::string& value);

unsigned resolve_prime(const JobConfig& cfg, const GroupTable& G);

}  // namespace pib::app

#include "app/config.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "third_party/toml.hpp"

#include "ffield/errors.hpp"

namespace pib::app {

namespace fs = std::filesystem;

namespace {

Json from_toml(const toml::node& n) {
  if (auto* t = n.as_table()) {
    Json o = Json::object();
    for (auto& [k, v] : *t) o[std::string(k.str())] = from_toml(v);
    return o;
  }
  if (auto* a = n.as_array()) {
    Json o = Json::array();
    for (auto& v : *a) o.push_back(from_toml(v));
    return o;
  }
  if (auto v = n.value<std::int64_t>(); v && n.is_integer()) return *v;
  if (auto v = n.value<double>(); v && n.is_floating_point()) return *v;
  if (auto v = n.value<bool>()) return *v;
  if (auto v = n.value<std::string>()) return *v;
  throw InvalidInput("unsupported TOML value");
}

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return e;
}

// "name(1,2)" -> name, {1,2}
bool split_call(const std::string& s, std::string& name, std::vector<long long>& args) {
  static const std::regex re(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^)]*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return false;
  name = m[1];
  args.clear();
  if (m[2].matched) {
    std::stringstream ss(m[2].str());
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        args.push_back(std::stoll(tok, &used));
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) return false;
      } catch (const std::exception&) {
        return false;
      }
    }
  }
  return true;
}

unsigned as_uint(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InvalidInput(std::string(what) + " must be a non-negative integer");
  return v.get<unsigned>();
}

std::vector<std::vector<int>> int_rows(const Json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + " must be a list of lists");
  std::vector<std::vector<int>> out;
  for (auto& row : v) {
    if (!row.is_array()) throw InvalidInput(std::string(what) + " must be a list of lists");
    std::vector<int> r;
    for (auto& x : row) {
      if (!x.is_number_integer()) throw InvalidInput(std::string(what) + " entries must be integers");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupPtr builtin_group(const std::string& name, const std::vector<long long>& a) {
  auto need = [&](std::size_t k) {
    if (a.size() != k) throw InvalidInput("group '" + name + "' takes " + std::to_string(k) + " argument(s)");
    for (auto v : a)
      if (v <= 0) throw InvalidInput("group arguments must be positive");
  };
  if (name == "klein4") return need(0), GroupTable::klein4();
  if (name == "heisenberg") return need(1), GroupTable::heisenberg(static_cast<unsigned>(a[0]));
  if (name == "elementary_abelian") return need(2), GroupTable::elementary_abelian(a[0], a[1]);
  if (name == "cyclic") return need(1), GroupTable::cyclic(a[0]);
  if (name == "dihedral") return need(1), GroupTable::dihedral(a[0]);
  if (name == "alternating") return need(1), GroupTable::alternating(a[0]);
  if (name == "symmetric") return need(1), GroupTable::symmetric(a[0]);
  throw InvalidInput("unknown group '" + name + "'");
}

fs::path resolve(const std::string& s, const fs::path& base) {
  fs::path p(s);
  if (p.is_relative()) p = base / p;
  return p;
}

bool looks_like_file(const std::string& s) {
  auto e = lower_ext(s);
  return e == ".json" || e == ".toml";
}

}  // namespace

Json read_data_file(const fs::path& path) {
  if (!fs::exists(path)) throw InvalidInput("file not found: " + path.string());
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (lower_ext(path) == ".toml") {
    try {
      return from_toml(toml::parse(ss.str(), path.string()));
    } catch (const toml::parse_error& e) {
      throw InvalidInput("TOML parse error in " + path.string() + ": " + std::string(e.description()));
    }
  }
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception& e) {
    throw InvalidInput("JSON parse error in " + path.string() + ": " + e.what());
  }
}

JobConfig load_config(const fs::path& path) {
  Json c = read_data_file(path);
  if (!c.is_object()) throw InvalidInput("config must be a table");
  JobConfig cfg;
  cfg.base_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  for (auto& [k, v] : c.items()) {
    if (k == "group") cfg.group = v;
    else if (k == "module") cfg.module = v;
    else if (k == "prime") cfg.prime = as_uint(v, "prime");
    else if (k == "j") cfg.j = as_uint(v, "j");
    else if (k == "method") {
      std::string m = v.is_string() ? v.get<std::string>() : "";
      if (m == "exact") cfg.method = Method::Exact;
      else if (m == "sampled") cfg.method = Method::Sampled;
      else throw InvalidInput("method must be exact or sampled");
    } else if (k == "degree_bound") cfg.degree_bound = static_cast<int>(as_uint(v, "degree_bound"));
    else if (k == "samples") cfg.samples = as_uint(v, "samples");
    else if (k == "ext_cap") cfg.ext_cap = as_uint(v, "ext_cap");
    else if (k == "seed") cfg.seed = v.is_number_unsigned() || v.is_number_integer() ? v.get<std::uint64_t>() : throw InvalidInput("seed must be an integer");
    else if (k == "out") cfg.out = v.is_string() ? v.get<std::string>() : throw InvalidInput("out must be a string");
    else if (k == "jobs") cfg.jobs = std::max(1u, as_uint(v, "jobs"));
    else throw InvalidInput("unknown config key '" + k + "'");
  }
  return cfg;
}

GroupPtr build_group(const Json& spec, const fs::path& base_dir) {
  if (spec.is_null()) throw InvalidInput("no group given");
  if (spec.is_string()) {
    std::string s = spec.get<std::string>();
    if (looks_like_file(s)) {
      fs::path p = resolve(s, base_dir);
      return build_group(read_data_file(p), p.parent_path());
    }
    std::string name;
    std::vector<long long> args;
    if (!split_call(s, name, args)) throw InvalidInput("cannot parse group '" + s + "'");
    return builtin_group(name, args);
  }
  if (!spec.is_object()) throw InvalidInput("group spec must be a string or a table");
  if (spec.contains("builtin")) {
    std::vector<long long> args;
    if (spec.contains("args"))
      for (auto& a : spec["args"]) args.push_back(a.get<long long>());
    return builtin_group(spec["builtin"].get<std::string>(), args);
  }
  std::string name = spec.value("name", std::string("G"));
  if (spec.contains("table")) {
    auto rows = int_rows(spec["table"], "table");
    std::vector<std::vector<std::uint32_t>> t;
    for (auto& r : rows) {
      std::vector<std::uint32_t> u;
      for (int x : r) {
        if (x < 0) throw InvalidInput("table entries must be non-negative");
        u.push_back(static_cast<std::uint32_t>(x));
      }
      t.push_back(std::move(u));
    }
    std::vector<Elt> gens;
    if (spec.contains("generators"))
      for (auto& g : spec["generators"]) gens.push_back(as_uint(g, "generator"));
    return GroupTable::from_table(t, gens, name);
  }
  if (spec.contains("permutations")) {
    auto gens = int_rows(spec["permutations"], "permutations");
    unsigned deg = spec.contains("degree") ? as_uint(spec["degree"], "degree")
                                           : (gens.empty() ? 0u : static_cast<unsigned>(gens[0].size()));
    return GroupTable::permutations(deg, gens);
  }
  if (spec.contains("matrices")) {
    auto gens = int_rows(spec["matrices"], "matrices");
    if (!spec.contains("n") || !spec.contains("p")) throw InvalidInput("matrix group needs n and p");
    unsigned p = as_uint(spec["p"], "p");
    if (!is_prime(p)) throw InvalidInput("matrix group modulus must be prime");
    return GroupTable::matrices(as_uint(spec["n"], "n"), p, gens);
  }
  throw InvalidInput("group spec needs builtin, table, permutations or matrices");
}

ModulePtr build_module(const Json& spec, GroupPtr G, unsigned p, const fs::path& base_dir) {
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  if (spec.is_string()) {
    std::string s = spec.get<std::string>();
    if (looks_like_file(s)) {
      fs::path f = resolve(s, base_dir);
      return build_module(read_data_file(f), G, p, f.parent_path());
    }
    std::string name;
    std::vector<long long> args;
    if (!split_call(s, name, args)) throw InvalidInput("cannot parse module '" + s + "'");
    auto need = [&](std::size_t k) {
      if (args.size() != k) throw InvalidInput("module '" + name + "' takes " + std::to_string(k) + " argument(s)");
    };
    if (name == "trivial") return need(0), ModuleRep::trivial(G, p);
    if (name == "regular" || name == "free") return need(0), ModuleRep::regular(G, p);
    if (name == "natural") {
      need(0);
      if (!G->has_matrices() || G->matrix_prime() != p) throw InvalidInput("natural module needs a matrix group over F_p");
      return ModuleRep::natural(G);
    }
    if (name == "sym") {
      need(1);
      if (!G->has_matrices() || G->matrix_prime() != p) throw InvalidInput("sym(m) needs a matrix group over F_p");
      return ModuleRep::symmetric_power(G, static_cast<unsigned>(args[0]));
    }
    if (name == "radical") return need(1), ModuleRep::radical_quotient(G, p, static_cast<unsigned>(args[0]));
    if (name == "cyclic") {
      std::vector<Elt> xs;
      for (auto a : args) {
        if (a < 0 || static_cast<std::size_t>(a) >= G->order()) throw InvalidInput("element index out of range");
        xs.push_back(static_cast<Elt>(a));
      }
      return ModuleRep::cyclic_quotient(G, p, xs);
    }
    throw InvalidInput("unknown module '" + name + "'");
  }
  if (!spec.is_object() || !spec.contains("dim") || !spec.contains("generators"))
    throw InvalidInput("module spec needs dim and generators");
  unsigned m = as_uint(spec["dim"], "dim");
  auto rows = int_rows(spec["generators"], "generators");
  auto F = GaloisField::get(p, 1);
  std::vector<FMatrix> gens;
  for (auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(m) * m) throw InvalidInput("generator is not dim x dim");
    FMatrix A(F, m, m);
    for (unsigned i = 0; i < m; ++i)
      for (unsigned c = 0; c < m; ++c) A.at(i, c) = F->from_int(r[i * m + c]);
    gens.push_back(std::move(A));
  }
  return ModuleRep::load(G, p, std::move(gens), spec.value("name", std::string("module")));
}

void apply_setting(JobConfig& cfg, const std::string& key, const std::string& value) {
  auto num = [&](const char* what) -> std::uint64_t {
    try {
      std::size_t used = 0;
      if (value.empty() || value[0] == '-') throw std::invalid_argument(what);
      auto v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(what);
      return v;
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + " must be a non-negative integer, got '" + value + "'");
    }
  };
  auto spec = [&]() -> Json {
    if (!value.empty() && (value[0] == '{' || value[0] == '[')) {
      try {
        return Json::parse(value);
      } catch (const Json::exception& e) {
        throw InvalidInput(key + ": " + e.what());
      }
    }
    // flag values are relative to the working directory, not the config file
    if (looks_like_file(value) && fs::path(value).is_relative()) return (fs::current_path() / value).string();
    return value;
  };
  if (key == "group") cfg.group = spec();
  else if (key == "module") cfg.module = spec();
  else if (key == "prime") cfg.prime = static_cast<unsigned>(num("prime"));
  else if (key == "j") cfg.j = static_cast<unsigned>(num("j"));
  else if (key == "method") {
    if (value == "exact") cfg.method = Method::Exact;
    else if (value == "sampled") cfg.method = Method::Sampled;
    else throw InvalidInput("method must be exact or sampled");
  } else if (key == "degree_bound") cfg.degree_bound = static_cast<int>(num("degree_bound"));
  else if (key == "samples") cfg.samples = num("samples");
  else if (key == "ext_cap") cfg.ext_cap = static_cast<unsigned>(num("ext_cap"));
  else if (key == "seed") cfg.seed = num("seed");
  else if (key == "out") cfg.out = value;
  else if (key == "jobs") cfg.jobs = std::max<unsigned>(1, static_cast<unsigned>(num("jobs")));
  else if (key == "base_dir") cfg.base_dir = value;
  else throw InvalidInput("unknown setting '" + key + "'");
}

unsigned resolve_prime(const JobConfig& cfg, const GroupTable& G) {
  unsigned p = cfg.prime;
  if (!p && G.has_matrices()) p = G.matrix_prime();
  if (!p) {
    // a p-group determines p
    std::size_t n = G.order();
    for (unsigned q = 2; q <= n; ++q)
      if (n % q == 0) {
        while (n % q == 0) n /= q;
        if (n != 1) throw InvalidInput("no prime given and the group is not a p-group");
        p = q;
        break;
      }
    if (!p) throw InvalidInput("no prime given");
  }
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  return p;
}

}  // namespace pib::app

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "pibundle/pibundle.h"

int main(int argc, char** argv) {
  CLI::App app{"invariants of p-nilpotent operators on finite group representations"};
  app.set_version_flag("--version", std::string(pib_version()));

  std::string command, config, group, module, prime, j, method, degree_bound, samples, ext_cap, seed, out, jobs;
  app.add_option("command", command, "lattice | theta | jordan | cjt | bundle | springer | verify")
      ->required()
      ->check(CLI::IsMember({"lattice", "theta", "jordan", "cjt", "bundle", "springer", "verify"}));
  app.add_option("--config", config, "TOML or JSON job file");
  app.add_option("--group", group, "builtin such as heisenberg(3), or a .json/.toml group file");
  app.add_option("--module", module, "trivial, regular, natural, sym(m), radical(k), cyclic(g,..) or a module file");
  app.add_option("--prime", prime, "characteristic (default: from the group)");
  app.add_option("-j", j, "power of the operator");
  app.add_option("--method", method, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--degree-bound", degree_bound, "largest degree of the graded tables");
  app.add_option("--samples", samples, "random points per check");
  app.add_option("--ext-cap", ext_cap, "largest extension degree for sampling");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : PIB_INVALID_INPUT;
  }

  std::unique_ptr<pib_job, decltype(&pib_job_free)> job(pib_job_new(), pib_job_free);
  if (!job) return PIB_INTERNAL;
  auto bad = [&](pib_status s) {
    std::cerr << "error: " << pib_job_last_error(job.get()) << "\n";
    return s;
  };
  if (!config.empty())
    if (auto s = pib_job_load_config(job.get(), config.c_str())) return bad(s);
  const std::pair<const char*, std::string*> flags[] = {
      {"group", &group},         {"module", &module}, {"prime", &prime}, {"j", &j},       {"method", &method},
      {"degree_bound", &degree_bound}, {"samples", &samples}, {"ext_cap", &ext_cap}, {"seed", &seed},
      {"out", &out},             {"jobs", &jobs}};
  for (auto& [key, val] : flags)
    if (!val->empty())
      if (auto s = pib_job_set(job.get(), key, val->c_str())) return bad(s);

  pib_status rc = pib_job_run(job.get(), command.c_str());
  std::string report = pib_job_report_pretty(job.get(), 2);
  std::string path = pib_job_out_path(job.get());
  if (path.empty()) {
    std::cout << report << "\n";
  } else {
    std::ofstream f(path);
    if (!(f << report << "\n")) {
      std::cerr << "error: cannot write " << path << "\n";
      return PIB_INVALID_INPUT;
    }
  }
  if (rc != PIB_OK && *pib_job_last_error(job.get())) std::cerr << "error: " << pib_job_last_error(job.get()) << "\n";
  return rc;
}

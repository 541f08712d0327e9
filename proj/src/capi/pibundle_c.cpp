#include "pibundle/pibundle.h"

#include <string>

#include "app/commands.hpp"
#include "ffield/errors.hpp"

struct pib_job {
  pib::app::JobConfig cfg;
  std::string report = "{}";
  std::string pretty;
  std::string error;
};

namespace {

pib_status fail(pib_job* job, pib_status s, const std::string& msg) {
  job->error = msg;
  return s;
}

template <class F>
pib_status guarded(pib_job* job, F&& f) {
  if (!job) return PIB_NULL_HANDLE;
  job->error.clear();
  try {
    return f();
  } catch (const pib::InvalidInput& e) {
    return fail(job, PIB_INVALID_INPUT, e.what());
  } catch (const pib::ResourceLimit& e) {
    return fail(job, PIB_UNDECIDED, e.what());
  } catch (const std::exception& e) {
    return fail(job, PIB_INTERNAL, e.what());
  } catch (...) {
    return fail(job, PIB_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* pib_version(void) { return "0.1.0"; }

pib_job* pib_job_new(void) {
  try {
    return new pib_job();
  } catch (...) {
    return nullptr;
  }
}

void pib_job_free(pib_job* job) { delete job; }

pib_status pib_job_load_config(pib_job* job, const char* path) {
  return guarded(job, [&] {
    if (!path) return fail(job, PIB_INVALID_INPUT, "null path");
    job->cfg = pib::app::load_config(path);
    return PIB_OK;
  });
}

pib_status pib_job_set(pib_job* job, const char* key, const char* value) {
  return guarded(job, [&] {
    if (!key || !value) return fail(job, PIB_INVALID_INPUT, "null key or value");
    pib::app::apply_setting(job->cfg, key, value);
    return PIB_OK;
  });
}

pib_status pib_job_run(pib_job* job, const char* command) {
  return guarded(job, [&] {
    if (!command) return fail(job, PIB_INVALID_INPUT, "null command");
    auto res = pib::app::run(command, job->cfg);
    job->report = res.report.dump();
    job->pretty.clear();
    if (res.report.contains("error")) job->error = res.report["error"].value("message", std::string());
    return static_cast<pib_status>(res.exit_code);
  });
}

const char* pib_job_report(const pib_job* job) { return job ? job->report.c_str() : ""; }

const char* pib_job_report_pretty(pib_job* job, int indent) {
  if (!job) return "";
  try {
    job->pretty = nlohmann::ordered_json::parse(job->report).dump(indent < 0 ? -1 : indent);
  } catch (...) {
    job->pretty = job->report;
  }
  return job->pretty.c_str();
}

const char* pib_job_last_error(const pib_job* job) { return job ? job->error.c_str() : ""; }

const char* pib_job_out_path(const pib_job* job) { return job ? job->cfg.out.c_str() : ""; }

}

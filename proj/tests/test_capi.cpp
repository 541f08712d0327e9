#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pibundle/pibundle.h"

namespace {

const std::string data = PIB_TEST_DATA;

nlohmann::json report(pib_job* j) { return nlohmann::json::parse(pib_job_report(j)); }

}  // namespace

TEST_CASE("job lifecycle") {
  pib_job* j = pib_job_new();
  REQUIRE(j);
  CHECK(std::string(pib_version()).size() > 0);
  CHECK(pib_job_set(j, "group", "heisenberg(3)") == PIB_OK);
  CHECK(pib_job_run(j, "lattice") == PIB_OK);
  auto r = report(j);
  CHECK(r["schema"] == 1);
  CHECK(r["lattice"]["maximal_count"] == 4);
  CHECK(std::string(pib_job_last_error(j)).empty());
  CHECK(std::string(pib_job_report_pretty(j, 2)).find("\n  \"command\"") != std::string::npos);
  pib_job_free(j);
}

TEST_CASE("config file and overrides") {
  pib_job* j = pib_job_new();
  CHECK(pib_job_load_config(j, (data + "/job.toml").c_str()) == PIB_OK);
  CHECK(pib_job_set(j, "seed", "3") == PIB_OK);
  CHECK(pib_job_run(j, "cjt") == PIB_OK);
  auto r = report(j);
  CHECK(r["params"]["seed"] == 3);
  CHECK(r["cjt"]["status"] == "nonconstant");
  CHECK(r["group"]["name"] == "V4");
  pib_job_free(j);
}

TEST_CASE("errors") {
  CHECK(pib_job_run(nullptr, "lattice") == PIB_NULL_HANDLE);
  CHECK(pib_job_set(nullptr, "group", "klein4") == PIB_NULL_HANDLE);
  CHECK(std::string(pib_job_report(nullptr)).empty());
  pib_job_free(nullptr);

  pib_job* j = pib_job_new();
  CHECK(pib_job_set(j, "nosuch", "1") == PIB_INVALID_INPUT);
  CHECK(std::string(pib_job_last_error(j)).find("nosuch") != std::string::npos);
  CHECK(pib_job_set(j, "samples", "many") == PIB_INVALID_INPUT);
  CHECK(pib_job_set(j, "group", nullptr) == PIB_INVALID_INPUT);
  CHECK(pib_job_load_config(j, (data + "/bad.toml").c_str()) == PIB_INVALID_INPUT);
  CHECK(pib_job_run(j, "lattice") == PIB_INVALID_INPUT);  // no group yet
  CHECK(pib_job_set(j, "group", "klein4") == PIB_OK);
  CHECK(std::string(pib_job_last_error(j)).empty());
  CHECK(pib_job_run(j, "frobnicate") == PIB_INVALID_INPUT);
  CHECK(report(j)["error"]["kind"] == "invalid-input");
  CHECK(pib_job_set(j, "group", "{not json") == PIB_INVALID_INPUT);
  pib_job_free(j);
}

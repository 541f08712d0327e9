#pragma once

#include <functional>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace pib::app {

enum ExitCode { Ok = 0, CheckFailed = 1, BadInput = 2, Undecided = 3 };

struct RunResult {
  int exit_code = Ok;
  Json report;
};

const std::vector<std::string>& commands();

// never throws; errors become exit codes with an "error" entry in the report
RunResult run(const std::string& command, const JobConfig& cfg);

// f(0..n-1) on up to `jobs` threads; results are written by index so order is fixed
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f);

}  // namespace pib::app

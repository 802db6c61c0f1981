#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace curved_nbody::cli {

/// Process exit codes. Stable; nothing else is ever returned.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kSingular = 3,
  kIntegratorFailure = 4,
  kViolated = 5,
  kInconclusive = 6,
};

/// Companion file names of a primary output path.
std::string diagnostics_path(const std::string& out);
std::string summary_path(const std::string& out);

int cmd_simulate(const SimulateConfig& cfg, const std::string& out, std::ostream& log);
int cmd_verify(const VerifyConfig& cfg, const std::string& out, std::ostream& log);
int cmd_scan(const ScanConfig& cfg, const std::string& out, std::ostream& log);
int cmd_reduced(const ReducedConfig& cfg, const std::string& out, std::ostream& log);

/// Full command line, args[0] being the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curved_nbody::cli

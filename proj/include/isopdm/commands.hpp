#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isopdm/scenario.hpp"

namespace isopdm {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInvalidConfig = 2,
  kExitDomainError = 3,
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::pair<int, int>> grid;  ///< overrides grid.nu, grid.nv
  std::uint64_t seed = 12345;               ///< eigensolver start vectors
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tol = 0.0;
};

/// One report line per check: name, PASS or FAIL, value, tolerance.
std::string format_report(const std::vector<CheckResult>& checks);

/// Runs every check the scenario enables. Throws DomainError when a grid
/// leaves the map domain.
std::vector<CheckResult> verify_checks(const Scenario& scenario, const RunOptions& options);

/// Subcommands. Each writes its files into options.out_dir, returns an
/// exit code and never throws for configuration or domain problems;
/// progress lines go to out and diagnostics to err.
int run_density(const Scenario& scenario, const RunOptions& options, std::ostream& out,
                std::ostream& err);
int run_verify(const Scenario& scenario, const RunOptions& options, std::ostream& out,
               std::ostream& err);
int run_field(const Scenario& scenario, const RunOptions& options, std::ostream& out,
              std::ostream& err);
void list_maps(std::ostream& out);

}  // namespace isopdm

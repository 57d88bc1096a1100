#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <regex>

#include "isopdm/commands.hpp"

namespace {

std::optional<std::pair<int, int>> parse_grid(const std::string& text) {
  static const std::regex pattern(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  return std::pair{std::stoi(m[1]), std::stoi(m[2])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position-dependent-mass systems isospectral to the 2D oscillator"};
  app.require_subcommand(1);

  std::string config, out_dir = ".", grid;
  std::uint64_t seed = 12345;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "scenario JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--grid", grid, "override grid node counts, NUxNV");
    cmd->add_option("--seed", seed, "eigensolver seed");
  };
  auto* density = app.add_subcommand("density", "SU(2) coherent density (CSV + PGM)");
  auto* verify = app.add_subcommand("verify", "run the scenario's checks and write a report");
  auto* field = app.add_subcommand("field", "magnetic field and mass profile (CSV + PGM)");
  app.add_subcommand("list-maps", "list the built-in coordinate maps");
  for (auto* cmd : {density, verify, field}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : isopdm::kExitInvalidConfig;
  }

  if (app.got_subcommand("list-maps")) {
    isopdm::list_maps(std::cout);
    return isopdm::kExitOk;
  }

  isopdm::RunOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  if (!grid.empty()) {
    options.grid = parse_grid(grid);
    if (!options.grid) {
      std::cerr << "config error: --grid: expected NUxNV, got \"" << grid << "\"\n";
      return isopdm::kExitInvalidConfig;
    }
  }

  isopdm::Scenario scenario;
  try {
    scenario = isopdm::load_scenario(config);
  } catch (const isopdm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return isopdm::kExitInvalidConfig;
  }

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << options.out_dir.string() << ": " << ec.message() << '\n';
    return isopdm::kExitDomainError;
  }

  if (density->parsed()) return isopdm::run_density(scenario, options, std::cout, std::cerr);
  if (field->parsed()) return isopdm::run_field(scenario, options, std::cout, std::cerr);
  return isopdm::run_verify(scenario, options, std::cout, std::cerr);
}

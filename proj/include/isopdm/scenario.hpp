#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isopdm/coherent.hpp"
#include "isopdm/grid.hpp"
#include "isopdm/magnetic.hpp"
#include "isopdm/pdm.hpp"
#include "isopdm/spectra.hpp"

namespace isopdm {

/// Rejected configuration. field is a dotted path ("map.c1"), line is
/// 1-based or 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, std::string field, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string source_;
  int line_;
  std::string field_;
};

struct GridSpec {
  double u_min = -5.0, u_max = 5.0, v_min = -5.0, v_max = 5.0;
  int nu = 201, nv = 201;

  Grid2D grid() const { return {u_min, u_max, v_min, v_max, nu, nv}; }
};

struct MagneticSpec {
  MagneticParams params;
  double t = 0.0;
};

struct OutputSpec {
  std::string prefix = "out";
  bool csv = true;
  bool pgm = true;
};

struct ResidualCheck {
  GridSpec grid;
  double tol = 1e-3;
};

struct NormCheck {
  GridSpec grid;
  double tol = 1e-3;
};

struct EigenCheck {
  GridSpec grid;
  int k = 3;
  double tol = 1e-2;  ///< relative, per eigenvalue
  DiscretizeOptions discretize;
};

struct StationarityCheck {
  std::vector<double> times{0.0, 0.7, 1.9};
  double tol = 1e-10;
};

/// Checks run by `verify`. Each optional block enables one check; the
/// conformal check always runs on the main grid.
struct VerifySpec {
  std::vector<ModeIndex> modes{{0, 0}};
  double conformal_tol = 1e-9;
  std::optional<ResidualCheck> residual;
  std::optional<NormCheck> norm;
  std::optional<EigenCheck> eigen;
  double weights_tol = 1e-12;
  double curl_tol = 1e-6;
  std::optional<StationarityCheck> stationarity;
};

struct Scenario {
  std::string source;  ///< where the scenario was read from, for diagnostics
  std::string name;
  CoordinateMap map = CoordinateMap::identity();
  OscillatorParams osc;
  MassForm mass_form = MassForm::Derived;
  std::optional<CoherentSpec> coherent;
  bool weighted = false;
  std::optional<MagneticSpec> magnetic;
  GridSpec grid;
  OutputSpec output;
  VerifySpec verify;

  PdmSystem system() const { return {map, osc, mass_form}; }
};

/// Parse a JSON scenario. Unknown keys, wrong types and invalid values
/// throw ConfigError; source names the document in diagnostics.
Scenario parse_scenario(std::string_view text, const std::string& source = "<config>");

/// Read and parse a scenario file.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace isopdm

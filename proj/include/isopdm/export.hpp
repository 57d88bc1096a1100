#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "isopdm/grid.hpp"

namespace isopdm {

/// CSV with header "u,v,<names...>", one row per node, row-major in u,
/// every value printed with 17 significant digits.
std::string format_csv(const Grid2D& grid, const std::vector<std::string>& names,
                       const std::vector<const Field2D<double>*>& columns);

/// Binary 8-bit PGM (P5, maxval 255), width nv and height nu, so row r
/// holds u index r. Values are min-max normalized; a constant field maps
/// to 0.
std::string format_pgm(const Field2D<double>& field);

/// Write bytes exactly as given.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace isopdm

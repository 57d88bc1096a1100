#include "isopdm/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace isopdm {
namespace {

void append_number(std::string& out, double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  out.append(buf, std::size_t(n));
}

}  // namespace

std::string format_csv(const Grid2D& grid, const std::vector<std::string>& names,
                       const std::vector<const Field2D<double>*>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("format_csv: names and columns differ in count");
  for (const auto* c : columns)
    if (!(c->grid() == grid)) throw std::invalid_argument("format_csv: column grid mismatch");
  std::string out = "u,v";
  for (const auto& n : names) out += "," + n;
  out += '\n';
  out.reserve(out.size() + grid.size() * (2 + columns.size()) * 24);
  for (int i = 0; i < grid.nu(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) {
      append_number(out, grid.u(i));
      out += ',';
      append_number(out, grid.v(j));
      for (const auto* c : columns) {
        out += ',';
        append_number(out, (*c)(i, j));
      }
      out += '\n';
    }
  }
  return out;
}

std::string format_pgm(const Field2D<double>& field) {
  const Grid2D& g = field.grid();
  const auto [lo_it, hi_it] = std::minmax_element(field.values().begin(), field.values().end());
  const double lo = *lo_it, hi = *hi_it;
  std::string out = "P5\n" + std::to_string(g.nv()) + " " + std::to_string(g.nu()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + g.size(), '\0');
  if (hi > lo) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double t = (field.values()[k] - lo) / (hi - lo);
      out[header + k] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t)));
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace isopdm

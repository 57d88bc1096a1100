#include "isopdm/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "isopdm/errors.hpp"
#include "isopdm/export.hpp"

namespace isopdm {
namespace {

Grid2D main_grid(const Scenario& s, const RunOptions& options) {
  GridSpec g = s.grid;
  if (options.grid) std::tie(g.nu, g.nv) = *options.grid;
  return g.grid();
}

std::string mode_suffix(ModeIndex mode) {
  return "_m" + std::to_string(mode.m) + "_n" + std::to_string(mode.n);
}

std::vector<double> parent_spectrum(const OscillatorParams& osc, int k) {
  std::vector<double> e;
  for (int m = 0; m <= k; ++m)
    for (int n = 0; n <= k; ++n) e.push_back(energy(osc, {m, n}));
  std::sort(e.begin(), e.end());
  e.resize(std::size_t(k));
  return e;
}

// Nodes of the grid where the map is defined, not degenerate, and has a
// scale factor at least `floor` times the largest one seen.
std::vector<UV> regular_nodes(const CoordinateMap& map, const Grid2D& grid, double floor) {
  std::vector<UV> nodes;
  std::vector<double> h2;
  for (int i = 0; i < grid.nu(); ++i)
    for (int j = 0; j < grid.nv(); ++j) {
      const UV p = grid.node(i, j);
      if (!map.contains(p.u, p.v)) continue;
      nodes.push_back(p);
      h2.push_back(scale_factor(map, p.u, p.v));
    }
  const double top = h2.empty() ? 0.0 : *std::max_element(h2.begin(), h2.end());
  std::vector<UV> out;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (h2[k] > 0.0 && h2[k] >= floor * top) out.push_back(nodes[k]);
  return out;
}

CheckResult check(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, value, tol};
}

template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const RangeError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

void emit(const std::filesystem::path& path, const std::string& bytes, std::ostream& out) {
  write_file(path, bytes);
  out << "wrote " << path.string() << '\n';
}

}  // namespace

std::string format_report(const std::vector<CheckResult>& checks) {
  std::string out;
  char buf[64];
  for (const auto& c : checks) {
    out += c.name;
    out += c.pass ? "\tPASS\t" : "\tFAIL\t";
    std::snprintf(buf, sizeof buf, "%.6e\t%.6g\n", c.value, c.tol);
    out += buf;
  }
  return out;
}

std::vector<CheckResult> verify_checks(const Scenario& s, const RunOptions& options) {
  std::vector<CheckResult> checks;
  const PdmSystem sys = s.system();
  const Grid2D grid = main_grid(s, options);
  const VerifySpec& v = s.verify;

  {
    const auto nodes = regular_nodes(s.map, grid, 0.0);
    const auto report = validate_conformal(s.map, nodes, v.conformal_tol);
    checks.push_back({"conformal", report.passed() && report.checked > 0, report.worst_value(), v.conformal_tol});
  }

  if (v.residual) {
    const Grid2D g = v.residual->grid.grid();
    for (ModeIndex mode : v.modes) {
      const auto r = hamiltonian_residual(sys, mode, g);
      checks.push_back({"residual" + mode_suffix(mode), r.passes(v.residual->tol), r.relative, v.residual->tol});
    }
  }

  if (v.norm) {
    const Grid2D g = v.norm->grid.grid();
    const auto weight = sample(g, [&](double u, double vv) { return mass_at(sys, u, vv) / sys.osc.m0; });
    for (ModeIndex mode : v.modes) {
      const auto rho = sample(g, [&](double u, double vv) {
        const double p = wavefunction_uv(sys, mode, u, vv);
        return p * p;
      });
      checks.push_back(check("norm" + mode_suffix(mode), std::abs(quadrature(rho, weight) - 1.0), v.norm->tol));
    }
  }

  if (v.eigen) {
    const auto prob = discretize(sys, v.eigen->grid.grid(), v.eigen->discretize);
    const auto want = parent_spectrum(s.osc, v.eigen->k);
    std::vector<double> got(want.size(), std::numeric_limits<double>::infinity());
    try {
      got = lowest_eigenvalues(prob, v.eigen->k, 1e-8, options.seed);
    } catch (const ConvergenceError&) {
      // Reported as failing checks below.
    }
    for (std::size_t k = 0; k < got.size(); ++k)
      checks.push_back(check("eigen_" + std::to_string(k), std::abs(got[k] - want[k]) / want[k], v.eigen->tol));
  }

  if (s.coherent) {
    const CoherentSpec& c = *s.coherent;
    double total = 0.0;
    for (const auto& w : weights(c)) total += std::norm(w);
    checks.push_back(check("weights_norm", std::abs(total - 1.0), v.weights_tol));
    const double e0 = term_energy(c, s.osc, 0);
    double spread = 0.0;
    for (int K = 1; K <= c.L; ++K) spread = std::max(spread, std::abs(term_energy(c, s.osc, K) - e0) / e0);
    checks.push_back(check("energy_degeneracy", spread, 1e-12));
  }

  if (s.magnetic) {
    const MagneticParams& params = s.magnetic->params;
    double worst = 0.0;
    // Away from zeros of the scale factor the curl is well conditioned.
    for (const UV& p : regular_nodes(s.map, grid, 1e-4)) {
      const double a = field_profile(s.map, params, p.u, p.v, CurlPath::Analytic);
      const double f = field_profile(s.map, params, p.u, p.v, CurlPath::FiniteDifference);
      if (a != 0.0) worst = std::max(worst, std::abs(a - f) / std::abs(a));
    }
    checks.push_back(check("curl_consistency", worst, v.curl_tol));

    if (s.coherent && v.stationarity) {
      const auto& times = v.stationarity->times;
      const auto ref = magnetic_su2_density(*s.coherent, s.map, params, grid, times.front(), {s.weighted});
      double diff = 0.0;
      for (std::size_t k = 1; k < times.size(); ++k) {
        const auto d = magnetic_su2_density(*s.coherent, s.map, params, grid, times[k], {s.weighted});
        for (std::size_t n = 0; n < d.values().size(); ++n)
          diff = std::max(diff, std::abs(d.values()[n] - ref.values()[n]));
      }
      checks.push_back(check("stationarity", diff, v.stationarity->tol));
    }
  }
  return checks;
}

int run_density(const Scenario& s, const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!s.coherent) throw ConfigError(s.source, 0, "coherent", "required by density");
    const Grid2D grid = main_grid(s, options);
    const DensityOptions dopt{s.weighted};
    const auto density = s.magnetic ? magnetic_su2_density(*s.coherent, s.map, s.magnetic->params, grid,
                                                           s.magnetic->t, dopt)
                                    : su2_density(*s.coherent, s.system(), grid, dopt);
    std::size_t degenerate = 0;
    for (int i = 0; i < grid.nu(); ++i)
      for (int j = 0; j < grid.nv(); ++j)
        if (degenerate_at(s.system(), grid.u(i), grid.v(j))) ++degenerate;
    if (degenerate > 0) err << "note: " << degenerate << " grid node(s) sit on degenerate points (M = 0)\n";

    const auto base = options.out_dir / (s.output.prefix + "_density");
    if (s.output.csv) emit(base.string() + ".csv", format_csv(grid, {"density"}, {&density}), out);
    if (s.output.pgm) emit(base.string() + ".pgm", format_pgm(density), out);
    return int(kExitOk);
  });
}

int run_field(const Scenario& s, const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!s.magnetic) throw ConfigError(s.source, 0, "magnetic", "required by field");
    const Grid2D grid = main_grid(s, options);
    const PdmSystem sys = s.system();
    const auto B = sample(grid, [&](double u, double v) { return field_profile(s.map, s.magnetic->params, u, v); });
    const auto M = sample(grid, [&](double u, double v) { return mass_at(sys, u, v); });
    const auto base = options.out_dir / (s.output.prefix + "_field");
    if (s.output.csv) emit(base.string() + ".csv", format_csv(grid, {"B", "M"}, {&B, &M}), out);
    if (s.output.pgm) emit(base.string() + ".pgm", format_pgm(B), out);
    return int(kExitOk);
  });
}

int run_verify(const Scenario& s, const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto checks = verify_checks(s, options);
    const std::string report = format_report(checks);
    emit(options.out_dir / (s.output.prefix + "_verify.tsv"), report, out);
    out << report;
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    return int(ok ? kExitOk : kExitVerifyFailed);
  });
}

void list_maps(std::ostream& out) {
  out << "kind\tparameters\tfundamental domain\tcovering\n"
      << "identity\t-\t(u, v) in R^2\tsingle\n"
      << "polynomial\tc1, c2, d1, d2, branch (\"-\" or \"+\")\tv >= 0\tdouble, (u, v) ~ (-u, -v)\n"
      << "parabolic\t-\tv >= 0\tdouble, (u, v) ~ (-u, -v)\n"
      << "elliptic\ta > 0\tu >= 0, 0 <= v < 2 pi\tperiodic in v\n"
      << "bipolar\ta > 0\t0 <= v < 2 pi, (0, 0) excluded\tperiodic in v\n";
}

}  // namespace isopdm

#include "isopdm/pdm.hpp"

#include <algorithm>
#include <cmath>

namespace isopdm {
namespace {

constexpr double kDegenerateScale = 1e-12;
constexpr double kSupportCutoff = 1e-6;

}  // namespace

double mass_at(const PdmSystem& sys, double u, double v) {
  const Partials d = partials(sys.map, u, v);
  if (sys.mass_form == MassForm::Printed && sys.map.kind() == MapKind::EllipticCylinder) {
    const double a = std::get<EllipticParams>(sys.map.params()).a;
    return sys.osc.m0 * a * a * (std::cos(2.0 * v) - std::cosh(2.0 * u)) / 2.0;
  }
  const double h2 = scale_factor(d);
  if (h2 <= kDegenerateScale) return 0.0;
  const double J = jacobian(d);
  return sys.osc.m0 * J * J / h2;
}

bool degenerate_at(const PdmSystem& sys, double u, double v) {
  return scale_factor(sys.map, u, v) <= kDegenerateScale;
}

double potential_at(const PdmSystem& sys, double u, double v) {
  const XY p = evaluate(sys.map, u, v);
  const OscillatorParams& o = sys.osc;
  return 0.5 * o.m0 * (o.omega1 * o.omega1 * p.x * p.x + o.omega2 * o.omega2 * p.y * p.y);
}

double wavefunction_uv(const PdmSystem& sys, ModeIndex mode, double u, double v) {
  const XY p = evaluate(sys.map, u, v);
  return eigenfunction_xy(sys.osc, mode, p.x, p.y);
}

ResidualReport hamiltonian_residual(const PdmSystem& sys, ModeIndex mode, const Grid2D& grid) {
  const auto psi = sample(grid, [&](double u, double v) { return wavefunction_uv(sys, mode, u, v); });
  const double E = energy(sys.osc, mode);

  double max_psi = 0.0;
  for (double p : psi.values()) max_psi = std::max(max_psi, std::abs(p));

  ResidualReport report;
  report.max_e_psi = std::abs(E) * max_psi;
  const double hu2 = grid.hu() * grid.hu();
  const double hv2 = grid.hv() * grid.hv();
  const double hbar2 = sys.osc.hbar * sys.osc.hbar;

  for (int i = 1; i + 1 < grid.nu(); ++i) {
    for (int j = 1; j + 1 < grid.nv(); ++j) {
      const double p = psi(i, j);
      if (!(std::abs(p) > kSupportCutoff * max_psi)) continue;
      const double u = grid.u(i), v = grid.v(j);
      if (degenerate_at(sys, u, v)) {
        ++report.degenerate;
        continue;
      }
      const double lap = (psi(i + 1, j) - 2.0 * p + psi(i - 1, j)) / hu2 +
                         (psi(i, j + 1) - 2.0 * p + psi(i, j - 1)) / hv2;
      const double M = mass_at(sys, u, v);
      const double r = -hbar2 / (2.0 * M) * lap + potential_at(sys, u, v) * p - E * p;
      ++report.checked;
      if (std::abs(r) > report.max_abs) {
        report.max_abs = std::abs(r);
        report.worst_at = {u, v};
      }
    }
  }
  report.relative = report.max_e_psi > 0.0 ? report.max_abs / report.max_e_psi : 0.0;
  return report;
}

}  // namespace isopdm

#pragma once

#include <cstddef>

#include "isopdm/grid.hpp"
#include "isopdm/oscillator.hpp"
#include "isopdm/transform.hpp"

namespace isopdm {

/// How M(u,v) is evaluated.
///
/// Derived uses M = m0 J^2 / (f_u^2 + g_u^2) from the map's partials. Printed
/// reproduces the historical closed form for the elliptic family,
/// m0 a^2 [cos 2v - cosh 2u] / 2, which has the opposite (negative) sign and
/// therefore does not describe a physical mass; it exists so verification
/// runs can demonstrate the failure. For the other families the two agree.
enum class MassForm { Derived, Printed };

/// A coordinate map bound to the parent oscillator. The transformed
/// Schroedinger equation is
///   -hbar^2 / (2 M) (d_uu + d_vv) psi + V(f, g) psi = E psi,
/// with the same spectrum E_mn as the parent.
struct PdmSystem {
  CoordinateMap map;
  OscillatorParams osc;
  MassForm mass_form = MassForm::Derived;
};

/// M(u,v). Zero at degenerate points (see degenerate_at).
double mass_at(const PdmSystem& sys, double u, double v);

/// True where the scale factor vanishes (relative to 1e-12), so M = 0 and
/// the transformed equation is singular.
bool degenerate_at(const PdmSystem& sys, double u, double v);

/// Parent potential composed with the map: m0 (omega1^2 f^2 + omega2^2 g^2) / 2.
double potential_at(const PdmSystem& sys, double u, double v);

/// psi_mn(f(u,v), g(u,v)).
double wavefunction_uv(const PdmSystem& sys, ModeIndex mode, double u, double v);

struct ResidualReport {
  double relative = 0.0;      ///< max |r| / max |E psi|
  double max_abs = 0.0;       ///< max |r| over checked points
  double max_e_psi = 0.0;     ///< max |E psi| over the grid
  UV worst_at;                ///< location of max |r|
  std::size_t checked = 0;    ///< interior points with |psi| > 1e-6 max |psi|
  std::size_t degenerate = 0; ///< interior points skipped because M = 0

  bool passes(double tolerance) const noexcept { return checked > 0 && relative < tolerance; }
};

/// Residual of the transformed equation for the analytic eigenfunction:
/// r = [-hbar^2/(2M) (d_uu + d_vv) + V] psi - E psi with 5-point central
/// differences, over interior nodes where |psi| > 1e-6 max|psi|.
/// Throws DomainError if a grid node lies outside the map domain.
ResidualReport hamiltonian_residual(const PdmSystem& sys, ModeIndex mode, const Grid2D& grid);

}  // namespace isopdm

#pragma once

#include "isopdm/oscillator.hpp"
#include "isopdm/transform.hpp"

namespace isopdm {

/// Charged particle of mass m0 in a harmonic trap of frequency omega and a
/// uniform field B0 z-hat in the symmetric gauge A = (B0/2)(-y, x).
struct MagneticParams {
  double B0 = 0.0;
  double e_charge = 1.0;
  double omega = 1.0;
  double m0 = 1.0;
  double hbar = 1.0;
  double c_phase = 0.0;  ///< integration constant of the rotation angle

  void validate() const;
};

/// Rotation angle of the co-rotating frame, alpha(t) = -e B0 t / (2 m0) + c.
/// The rotating-frame time is taken equal to the lab time.
double alpha(const MagneticParams& params, double t);

/// Frequency of the isotropic oscillator seen in the rotating frame,
/// Omega = sqrt(omega^2 + e^2 B0^2 / (4 m0^2)).
double effective_frequency(const MagneticParams& params);

/// Isotropic oscillator (omega1 = omega2 = Omega) that the rotating frame sees.
OscillatorParams rotating_frame_oscillator(const MagneticParams& params);

/// Rotated coordinates X1 = cos(a) x + sin(a) y, Y1 = -sin(a) x + cos(a) y.
XY rotate_to_frame(double angle, double x, double y) noexcept;

/// chi_mn(X1, Y1): product of 1D oscillator eigenfunctions of frequency
/// Omega in the rotated coordinates at time t. Unit norm over the plane.
double chi_nm(const MagneticParams& params, ModeIndex mode, double x, double y, double t);

/// Coefficients of the transformed angular operator,
///   x d_y - y d_x = (m0 / M) [R d_u + S d_v],
///   R = -(M/m0)(f f_v + g g_v)/J,  S = (M/m0)(f f_u + g g_u)/J,
/// with the signed Jacobian. Throws DomainError at degenerate points.
struct RS {
  double R = 0.0;
  double S = 0.0;
};
RS compute_RS(const CoordinateMap& map, double u, double v);

enum class CurlPath {
  Analytic,          ///< closed-form second partials through the product rule
  FiniteDifference,  ///< central differences of compute_RS
};

/// Effective field B(u,v) = (B0/2) (dS/du - dR/dv). For conformal maps this
/// equals sign(J) B0 h^2: orientation-reversing maps flip the sign. Returns
/// the limit value 0 at degenerate points; throws DomainError outside the
/// map domain.
double field_profile(const CoordinateMap& map, const MagneticParams& params, double u, double v,
                     CurlPath path = CurlPath::Analytic);

/// chi_nm evaluated at (f(u,v), g(u,v)).
double magnetic_wavefunction_uv(const CoordinateMap& map, const MagneticParams& params,
                                ModeIndex mode, double u, double v, double t);

/// Trap potential seen in (u,v): m0 Omega^2 (f^2 + g^2) / 2.
double magnetic_potential_at(const CoordinateMap& map, const MagneticParams& params, double u,
                             double v);

}  // namespace isopdm

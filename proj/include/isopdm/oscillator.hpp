#pragma once

#include <vector>

namespace isopdm {

/// Constants of the constant-mass anisotropic oscillator
///   H = -hbar^2/(2 m0) Laplacian + m0 (omega1^2 x^2 + omega2^2 y^2) / 2.
struct OscillatorParams {
  double m0 = 1.0;
  double hbar = 1.0;
  double omega1 = 1.0;
  double omega2 = 1.0;

  /// Throws std::invalid_argument unless every constant is finite and > 0.
  void validate() const;

  /// Length scale X = sqrt(2 hbar / (m0 omega1)).
  double length_x() const;
  /// Length scale Y = sqrt(2 hbar / (m0 omega2)).
  double length_y() const;
};

/// Quantum numbers: m goes with x / omega1, n with y / omega2.
struct ModeIndex {
  int m = 0;
  int n = 0;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Largest degree for which the Hermite evaluators are validated.
inline constexpr int kMaxHermiteDegree = 200;

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
/// Throws RangeError for n < 0 or n > kMaxHermiteDegree.
double hermite(int n, double x);

/// Orthonormal Hermite functions phi_0..phi_nmax at xi,
///   phi_k(xi) = (2^k k! sqrt(pi))^(-1/2) H_k(xi) exp(-xi^2/2),
/// evaluated with a rescaled recurrence so the Gaussian never under- or
/// overflows against the polynomial factor.
std::vector<double> hermite_functions(int nmax, double xi);

/// psi_mn(x,y) = N H_m(sqrt2 x/X) H_n(sqrt2 y/Y) exp(-(x/X)^2 - (y/Y)^2),
/// N = [2^(m+n-1) pi m! n! X Y]^(-1/2). Unit norm over the plane.
double eigenfunction_xy(const OscillatorParams& params, ModeIndex mode, double x, double y);

/// E = hbar omega1 (m + 1/2) + hbar omega2 (n + 1/2).
double energy(const OscillatorParams& params, ModeIndex mode);

}  // namespace isopdm

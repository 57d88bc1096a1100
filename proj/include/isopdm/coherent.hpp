#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "isopdm/grid.hpp"
#include "isopdm/magnetic.hpp"
#include "isopdm/oscillator.hpp"
#include "isopdm/pdm.hpp"

namespace isopdm {

/// Which quantum numbers the K-th term of the superposition carries.
///
/// Stationary: m = p (L - K), n = q K. With omega1 = q and omega2 = p every
/// term has energy hbar [p q L + (p + q)/2], so the superposition is
/// stationary for any (p, q).
///
/// Printed: m = q (L - K), n = p K. Degenerate only when p = q; kept for
/// comparing against figures generated with that convention.
enum class ModeConvention { Stationary, Printed };

/// SU(2) coherent superposition
///   Phi = sum_K w_K psi_{m(K) n(K)},  w_K = (1 + A^2)^(-L/2) binom(L,K)^(1/2) tau^K,
/// with tau = A exp(i phi).
struct CoherentSpec {
  int p = 1;
  int q = 1;
  int L = 20;
  double A = 1.0;
  double phi = std::numbers::pi / 2.0;
  ModeConvention convention = ModeConvention::Stationary;

  /// Throws std::invalid_argument for p, q, L < 1, A < 0 or non-finite values.
  void validate() const;
  /// False when gcd(p, q) > 1. Such specs are accepted; callers may warn.
  bool reduced() const noexcept;
};

/// w_0..w_L. sum |w_K|^2 = 1.
std::vector<std::complex<double>> weights(const CoherentSpec& spec);

/// Mode of the K-th term. Throws RangeError unless 0 <= K <= L.
ModeIndex mode_assignment(const CoherentSpec& spec, int K);

/// Energy of the K-th term under the parent oscillator.
double term_energy(const CoherentSpec& spec, const OscillatorParams& osc, int K);

/// Phi at (x, y) of the constant-mass oscillator `osc`, summed with
/// compensated extended-precision accumulation.
std::complex<double> coherent_amplitude_xy(const CoherentSpec& spec,
                                           const std::vector<std::complex<double>>& w,
                                           const OscillatorParams& osc, double x, double y);

struct DensityOptions {
  /// Multiply by M/m0 so the field integrates to 1 with du dv.
  bool weighted = false;
};

/// |Phi(u,v)|^2 of the PDM system on every grid node.
Field2D<double> su2_density(const CoherentSpec& spec, const PdmSystem& sys, const Grid2D& grid,
                            DensityOptions options = {});

/// |Phi(u,v,t)|^2 built from the rotating-frame states chi_nm.
Field2D<double> magnetic_su2_density(const CoherentSpec& spec, const CoordinateMap& map,
                                     const MagneticParams& params, const Grid2D& grid, double t,
                                     DensityOptions options = {});

/// Number of 8-connected components of {value >= fraction * max value}.
/// With periodic_v the v = v_min and v = v_max columns are treated as
/// neighbours (the last column duplicates the first).
int level_set_components(const Field2D<double>& field, double fraction, bool periodic_v = false);

}  // namespace isopdm

#include "isopdm/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isopdm/errors.hpp"

namespace isopdm {
namespace {

constexpr double kDegenerateScale = 1e-12;

struct MetricTerms {
  XY p;
  Partials d;
  double J;
  double h2;
};

MetricTerms metric_terms(const CoordinateMap& map, double u, double v) {
  MetricTerms t{evaluate(map, u, v), partials(map, u, v), 0.0, 0.0};
  t.J = jacobian(t.d);
  t.h2 = scale_factor(t.d);
  if (t.h2 <= kDegenerateScale) {
    std::ostringstream os;
    os << map.name() << ": degenerate point (" << u << ", " << v << ") has zero scale factor";
    throw DomainError(os.str());
  }
  return t;
}

}  // namespace

void MagneticParams::validate() const {
  if (!(std::isfinite(m0) && m0 > 0.0)) throw std::invalid_argument("magnetic: m0 must be positive");
  if (!(std::isfinite(hbar) && hbar > 0.0))
    throw std::invalid_argument("magnetic: hbar must be positive");
  if (!(std::isfinite(omega) && omega >= 0.0))
    throw std::invalid_argument("magnetic: omega must be non-negative");
  if (!std::isfinite(B0) || !std::isfinite(e_charge) || !std::isfinite(c_phase))
    throw std::invalid_argument("magnetic: B0, e and c must be finite");
  if (effective_frequency(*this) <= 0.0)
    throw std::invalid_argument("magnetic: omega = 0 and B0 e = 0 leave no confinement");
}

double alpha(const MagneticParams& params, double t) {
  return -params.e_charge * params.B0 * t / (2.0 * params.m0) + params.c_phase;
}

double effective_frequency(const MagneticParams& params) {
  const double larmor = params.e_charge * params.B0 / (2.0 * params.m0);
  return std::sqrt(params.omega * params.omega + larmor * larmor);
}

OscillatorParams rotating_frame_oscillator(const MagneticParams& params) {
  const double Omega = effective_frequency(params);
  return {params.m0, params.hbar, Omega, Omega};
}

XY rotate_to_frame(double angle, double x, double y) noexcept {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * x + s * y, -s * x + c * y};
}

double chi_nm(const MagneticParams& params, ModeIndex mode, double x, double y, double t) {
  const XY r = rotate_to_frame(alpha(params, t), x, y);
  return eigenfunction_xy(rotating_frame_oscillator(params), mode, r.x, r.y);
}

RS compute_RS(const CoordinateMap& map, double u, double v) {
  const MetricTerms t = metric_terms(map, u, v);
  const double mass_ratio = t.J * t.J / t.h2;  // M / m0
  const double f = t.p.x, g = t.p.y;
  return {-mass_ratio * (f * t.d.f_v + g * t.d.g_v) / t.J,
          mass_ratio * (f * t.d.f_u + g * t.d.g_u) / t.J};
}

double field_profile(const CoordinateMap& map, const MagneticParams& params, double u, double v,
                     CurlPath path) {
  // B is continuous with limit 0 where the scale factor vanishes.
  if (scale_factor(map, u, v) <= kDegenerateScale) return 0.0;
  double curl = 0.0;
  if (path == CurlPath::FiniteDifference) {
    const double hu = 1e-5 * std::max(1.0, std::abs(u));
    const double hv = 1e-5 * std::max(1.0, std::abs(v));
    const double dS_du = (compute_RS(map, u + hu, v).S - compute_RS(map, u - hu, v).S) / (2.0 * hu);
    const double dR_dv = (compute_RS(map, u, v + hv).R - compute_RS(map, u, v - hv).R) / (2.0 * hv);
    curl = dS_du - dR_dv;
  } else {
    // R = -k Q, S = k P with k = J / h^2, P = f f_u + g g_u, Q = f f_v + g g_v.
    const MetricTerms t = metric_terms(map, u, v);
    const SecondPartials dd = second_partials(map, u, v);
    const Partials& d = t.d;
    const double f = t.p.x, g = t.p.y;
    const double k = t.J / t.h2;
    const double P = f * d.f_u + g * d.g_u;
    const double Q = f * d.f_v + g * d.g_v;
    const double P_u = d.f_u * d.f_u + f * dd.f_uu + d.g_u * d.g_u + g * dd.g_uu;
    const double Q_v = d.f_v * d.f_v + f * dd.f_vv + d.g_v * d.g_v + g * dd.g_vv;
    const double J_u = dd.f_uu * d.g_v + d.f_u * dd.g_uv - dd.g_uu * d.f_v - d.g_u * dd.f_uv;
    const double J_v = dd.f_uv * d.g_v + d.f_u * dd.g_vv - dd.g_uv * d.f_v - d.g_u * dd.f_vv;
    const double h2_u = 2.0 * (d.f_u * dd.f_uu + d.g_u * dd.g_uu);
    const double h2_v = 2.0 * (d.f_u * dd.f_uv + d.g_u * dd.g_uv);
    const double k_u = (J_u * t.h2 - t.J * h2_u) / (t.h2 * t.h2);
    const double k_v = (J_v * t.h2 - t.J * h2_v) / (t.h2 * t.h2);
    const double dS_du = k_u * P + k * P_u;
    const double dR_dv = -(k_v * Q + k * Q_v);
    curl = dS_du - dR_dv;
  }
  return 0.5 * params.B0 * curl;
}

double magnetic_wavefunction_uv(const CoordinateMap& map, const MagneticParams& params,
                                ModeIndex mode, double u, double v, double t) {
  const XY p = evaluate(map, u, v);
  return chi_nm(params, mode, p.x, p.y, t);
}

double magnetic_potential_at(const CoordinateMap& map, const MagneticParams& params, double u,
                             double v) {
  const XY p = evaluate(map, u, v);
  const double Omega = effective_frequency(params);
  return 0.5 * params.m0 * Omega * Omega * (p.x * p.x + p.y * p.y);
}

}  // namespace isopdm

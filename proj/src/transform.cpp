#include "isopdm/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "isopdm/errors.hpp"

namespace isopdm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cosh u - cos v below this is treated as the bipolar point at infinity.
constexpr double kBipolarSingular = 1e-14;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double branch_sign(Branch b) { return b == Branch::Minus ? -1.0 : 1.0; }

void require_point(const CoordinateMap& map, double u, double v) {
  if (map.contains(u, v)) return;
  std::ostringstream os;
  os << map.name() << ": point (" << u << ", " << v << ") ";
  if (!std::isfinite(u) || !std::isfinite(v))
    os << "is not finite";
  else if (!map.domain().contains({u, v}))
    os << "is outside the map domain";
  else
    os << "is an excluded singular point";
  throw DomainError(os.str());
}

// Closed forms, no domain checking.

XY eval_poly(const PolynomialParams& p, double u, double v) {
  const double s = branch_sign(p.branch);
  const double half_diff = 0.5 * (u * u - v * v);
  return {s * p.c2 * half_diff + p.c1 * u * v + p.d1,
          -s * p.c1 * half_diff + p.c2 * u * v + p.d2};
}

Partials partials_poly(const PolynomialParams& p, double u, double v) {
  const double s = branch_sign(p.branch);
  return {s * p.c2 * u + p.c1 * v, -s * p.c2 * v + p.c1 * u,
          -s * p.c1 * u + p.c2 * v, s * p.c1 * v + p.c2 * u};
}

SecondPartials second_poly(const PolynomialParams& p) {
  const double s = branch_sign(p.branch);
  return {s * p.c2, p.c1, -s * p.c2, -s * p.c1, p.c2, s * p.c1};
}

}  // namespace

CoordinateMap CoordinateMap::identity() { return {MapKind::Identity, IdentityParams{}}; }

CoordinateMap CoordinateMap::polynomial(const PolynomialParams& params) {
  if (!(std::isfinite(params.c1) && std::isfinite(params.c2) && std::isfinite(params.d1) &&
        std::isfinite(params.d2)))
    throw std::invalid_argument("polynomial map: parameters must be finite");
  if (params.c1 == 0.0 && params.c2 == 0.0)
    throw std::invalid_argument("polynomial map: c1 and c2 cannot both be zero (constant map)");
  return {MapKind::Polynomial, params};
}

CoordinateMap CoordinateMap::parabolic_cylinder() {
  return {MapKind::ParabolicCylinder, ParabolicParams{}};
}

CoordinateMap CoordinateMap::elliptic_cylinder(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("elliptic cylinder map: a must be positive");
  return {MapKind::EllipticCylinder, EllipticParams{a}};
}

CoordinateMap CoordinateMap::bipolar(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("bipolar map: a must be positive");
  return {MapKind::Bipolar, BipolarParams{a}};
}

PolynomialParams CoordinateMap::parabolic_as_polynomial() noexcept {
  return {1.0, 0.0, 0.0, 0.0, Branch::Minus};
}

UVRect CoordinateMap::domain() const noexcept { return UVRect{}; }

UVRect CoordinateMap::fundamental() const noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case MapKind::Identity:
      return UVRect{};
    case MapKind::Polynomial:
    case MapKind::ParabolicCylinder:
      return {-inf, inf, 0.0, inf};
    case MapKind::EllipticCylinder:
      return {0.0, inf, 0.0, kTwoPi};
    case MapKind::Bipolar:
      return {-inf, inf, 0.0, kTwoPi};
  }
  return UVRect{};
}

Covering CoordinateMap::covering() const noexcept {
  switch (kind_) {
    case MapKind::Identity:
      return Covering::SingleCover;
    case MapKind::Polynomial:
    case MapKind::ParabolicCylinder:
      return Covering::DoubleCover;
    case MapKind::EllipticCylinder:
    case MapKind::Bipolar:
      return Covering::PeriodicInV;
  }
  return Covering::SingleCover;
}

bool CoordinateMap::contains(double u, double v) const noexcept {
  if (!std::isfinite(u) || !std::isfinite(v)) return false;
  if (!domain().contains({u, v})) return false;
  if (kind_ == MapKind::Bipolar) return std::cosh(u) - std::cos(v) > kBipolarSingular;
  return true;
}

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Identity:
      return "identity";
    case MapKind::Polynomial:
      return "polynomial";
    case MapKind::ParabolicCylinder:
      return "parabolic";
    case MapKind::EllipticCylinder:
      return "elliptic";
    case MapKind::Bipolar:
      return "bipolar";
  }
  return "unknown";
}

std::string CoordinateMap::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  std::visit(Overloaded{
                 [](const IdentityParams&) {},
                 [](const ParabolicParams&) {},
                 [&](const PolynomialParams& p) {
                   os << "(c1=" << p.c1 << ", c2=" << p.c2 << ", d1=" << p.d1 << ", d2=" << p.d2
                      << ", branch=" << (p.branch == Branch::Minus ? '-' : '+') << ')';
                 },
                 [&](const EllipticParams& p) { os << "(a=" << p.a << ')'; },
                 [&](const BipolarParams& p) { os << "(a=" << p.a << ')'; },
             },
             params_);
  return os.str();
}

XY evaluate(const CoordinateMap& map, double u, double v) {
  require_point(map, u, v);
  return std::visit(
      Overloaded{
          [&](const IdentityParams&) { return XY{u, v}; },
          [&](const PolynomialParams& p) { return eval_poly(p, u, v); },
          [&](const ParabolicParams&) { return XY{u * v, 0.5 * (u * u - v * v)}; },
          [&](const EllipticParams& p) {
            return XY{p.a * std::sinh(u) * std::sin(v), p.a * std::cosh(u) * std::cos(v)};
          },
          [&](const BipolarParams& p) {
            const double den = std::cosh(u) - std::cos(v);
            return XY{p.a * std::sinh(u) / den, p.a * std::sin(v) / den};
          },
      },
      map.params());
}

Partials partials(const CoordinateMap& map, double u, double v) {
  require_point(map, u, v);
  return std::visit(
      Overloaded{
          [&](const IdentityParams&) { return Partials{1.0, 0.0, 0.0, 1.0}; },
          [&](const PolynomialParams& p) { return partials_poly(p, u, v); },
          [&](const ParabolicParams&) { return Partials{v, u, u, -v}; },
          [&](const EllipticParams& p) {
            const double ch = std::cosh(u), sh = std::sinh(u);
            const double c = std::cos(v), s = std::sin(v);
            return Partials{p.a * ch * s, p.a * sh * c, p.a * sh * c, -p.a * ch * s};
          },
          [&](const BipolarParams& p) {
            const double ch = std::cosh(u), sh = std::sinh(u);
            const double c = std::cos(v), s = std::sin(v);
            const double den2 = (ch - c) * (ch - c);
            const double f_u = p.a * (1.0 - ch * c) / den2;
            const double f_v = -p.a * sh * s / den2;
            return Partials{f_u, f_v, f_v, -f_u};
          },
      },
      map.params());
}

SecondPartials second_partials(const CoordinateMap& map, double u, double v) {
  require_point(map, u, v);
  return std::visit(
      Overloaded{
          [&](const IdentityParams&) { return SecondPartials{}; },
          [&](const PolynomialParams& p) { return second_poly(p); },
          [&](const ParabolicParams&) { return SecondPartials{0.0, 1.0, 0.0, 1.0, 0.0, -1.0}; },
          [&](const EllipticParams& p) {
            const double ch = std::cosh(u), sh = std::sinh(u);
            const double c = std::cos(v), s = std::sin(v);
            const double f = p.a * sh * s, g = p.a * ch * c;
            return SecondPartials{f, p.a * ch * c, -f, g, -p.a * sh * s, -g};
          },
          [&](const BipolarParams& p) {
            const double ch = std::cosh(u), sh = std::sinh(u);
            const double c = std::cos(v), s = std::sin(v);
            const double den = ch - c;
            const double den3 = den * den * den;
            const double n1 = 1.0 - ch * c;
            const double f_uu = p.a * (-sh * c * den - 2.0 * n1 * sh) / den3;
            const double f_uv = p.a * (ch * s * den - 2.0 * n1 * s) / den3;
            const double f_vv = -p.a * sh * (c * den - 2.0 * s * s) / den3;
            // g_u = f_v and g_v = -f_u.
            return SecondPartials{f_uu, f_uv, f_vv, f_uv, f_vv, -f_uv};
          },
      },
      map.params());
}

double jacobian(const Partials& d) noexcept { return d.f_u * d.g_v - d.g_u * d.f_v; }

double jacobian(const CoordinateMap& map, double u, double v) {
  return jacobian(partials(map, u, v));
}

double scale_factor(const Partials& d) noexcept { return d.f_u * d.f_u + d.g_u * d.g_u; }

double scale_factor(const CoordinateMap& map, double u, double v) {
  return scale_factor(partials(map, u, v));
}

double ConformalReport::worst_value() const noexcept {
  return std::max(worst.crossed, worst.scale);
}

ConformalReport validate_conformal(const PartialsFn& derivatives, std::span<const UV> samples,
                                   double tolerance) {
  ConformalReport report;
  report.tolerance = tolerance;
  for (const UV& p : samples) {
    const Partials d = derivatives(p.u, p.v);
    const double h2u = d.f_u * d.f_u + d.g_u * d.g_u;
    const double h2v = d.f_v * d.f_v + d.g_v * d.g_v;
    const double h2 = std::max(h2u, h2v);
    if (h2 == 0.0) {
      report.degenerate.push_back(p);
      continue;
    }
    ++report.checked;
    const double crossed = std::abs(d.g_u * d.g_v + d.f_u * d.f_v) / h2;
    const double scale = std::abs(h2u - h2v) / h2;
    if (crossed > tolerance) report.crossed_failed = true;
    if (scale > tolerance) report.scale_failed = true;
    if (crossed > tolerance || scale > tolerance) ++report.failures;
    if (std::max(crossed, scale) > report.worst_value() || report.checked == 1)
      report.worst = {p, crossed, scale};
  }
  return report;
}

ConformalReport validate_conformal(const CoordinateMap& map, std::span<const UV> samples,
                                   double tolerance) {
  return validate_conformal([&map](double u, double v) { return partials(map, u, v); }, samples,
                            tolerance);
}

}  // namespace isopdm

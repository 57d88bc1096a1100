#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace isopdm {

/// A point of the (u,v) parameter plane.
struct UV {
  double u = 0.0;
  double v = 0.0;
};

/// A point of the physical (x,y) plane.
struct XY {
  double x = 0.0;
  double y = 0.0;
};

struct Partials {
  double f_u = 0.0;
  double f_v = 0.0;
  double g_u = 0.0;
  double g_v = 0.0;
};

struct SecondPartials {
  double f_uu = 0.0;
  double f_uv = 0.0;
  double f_vv = 0.0;
  double g_uu = 0.0;
  double g_uv = 0.0;
  double g_vv = 0.0;
};

enum class MapKind { Identity, Polynomial, ParabolicCylinder, EllipticCylinder, Bipolar };

/// Which of the two Cauchy-Riemann-type branches a polynomial map uses.
/// Minus: f_u = -g_v, f_v = +g_u (orientation reversing, J < 0).
/// Plus:  f_u = +g_v, f_v = -g_u (orientation preserving, J > 0).
enum class Branch { Minus, Plus };

struct IdentityParams {};

/// Second-degree conformal polynomial map
///   f = s c2 (u^2 - v^2)/2 + c1 u v + d1
///   g = -s c1 (u^2 - v^2)/2 + c2 u v + d2
/// with s = -1 on the Minus branch and s = +1 on the Plus branch.
struct PolynomialParams {
  double c1 = 0.0;
  double c2 = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  Branch branch = Branch::Minus;
};

/// f = u v, g = (u^2 - v^2)/2.
struct ParabolicParams {};

/// f = a sinh u sin v, g = a cosh u cos v.
struct EllipticParams {
  double a = 1.0;
};

/// f = a sinh u / (cosh u - cos v), g = a sin v / (cosh u - cos v).
struct BipolarParams {
  double a = 1.0;
};

using MapParams =
    std::variant<IdentityParams, PolynomialParams, ParabolicParams, EllipticParams, BipolarParams>;

enum class Covering { SingleCover, DoubleCover, PeriodicInV };

/// Axis-aligned (possibly unbounded) rectangle in the (u,v) plane.
struct UVRect {
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();
  double v_min = -std::numeric_limits<double>::infinity();
  double v_max = std::numeric_limits<double>::infinity();

  bool contains(UV p) const noexcept {
    return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
  }
};

/// Coordinate transformation x = f(u,v), y = g(u,v) with closed-form
/// first and second partial derivatives.
///
/// Every built-in map is conformal (or anti-conformal). `domain()` is where
/// the closed forms are valid; `fundamental()` is the sub-domain whose image
/// covers the (x,y) plane exactly once up to a measure-zero set:
///
///   Identity            whole plane                  single cover
///   Polynomial/Parab.   v >= 0                       (u,v) plane double covers
///   EllipticCylinder    u >= 0, v in [0, 2pi)        periodic in v
///   Bipolar             v in [0, 2pi)                periodic in v
///
/// Bipolar excludes the points (0, 2 pi k), which map to infinity.
class CoordinateMap {
 public:
  static CoordinateMap identity();
  static CoordinateMap polynomial(const PolynomialParams& params);
  static CoordinateMap parabolic_cylinder();
  static CoordinateMap elliptic_cylinder(double a);
  static CoordinateMap bipolar(double a);

  MapKind kind() const noexcept { return kind_; }
  const MapParams& params() const noexcept { return params_; }

  UVRect domain() const noexcept;
  UVRect fundamental() const noexcept;
  Covering covering() const noexcept;

  /// True when (u,v) is finite, inside domain() and not an excluded point.
  bool contains(double u, double v) const noexcept;

  std::string name() const;

  /// Parabolic cylinder coordinates are the polynomial map with c1 = 1,
  /// c2 = d1 = d2 = 0 on the Minus branch; this returns those parameters.
  static PolynomialParams parabolic_as_polynomial() noexcept;

 private:
  CoordinateMap(MapKind kind, MapParams params) : kind_(kind), params_(std::move(params)) {}

  MapKind kind_;
  MapParams params_;
};

std::string_view to_string(MapKind kind);

XY evaluate(const CoordinateMap& map, double u, double v);
Partials partials(const CoordinateMap& map, double u, double v);
SecondPartials second_partials(const CoordinateMap& map, double u, double v);

/// Signed Jacobian determinant f_u g_v - g_u f_v.
double jacobian(const CoordinateMap& map, double u, double v);
double jacobian(const Partials& d) noexcept;

/// h^2 = f_u^2 + g_u^2.
double scale_factor(const CoordinateMap& map, double u, double v);
double scale_factor(const Partials& d) noexcept;

struct ConformalViolation {
  UV at;
  double crossed = 0.0;  ///< |g_u g_v + f_u f_v| / h^2
  double scale = 0.0;    ///< |(f_u^2 + g_u^2) - (f_v^2 + g_v^2)| / h^2
};

struct ConformalReport {
  double tolerance = 1e-9;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<UV> degenerate;   ///< points with h^2 = 0, skipped
  ConformalViolation worst;     ///< largest max(crossed, scale)
  bool crossed_failed = false;  ///< some point violates g_u g_v + f_u f_v = 0
  bool scale_failed = false;    ///< some point violates the equal-scale condition

  bool passed() const noexcept { return failures == 0 && checked > 0; }
  double worst_value() const noexcept;
};

using PartialsFn = std::function<Partials(double u, double v)>;

/// Check both conformality conditions at every sample. Values are measured
/// relative to the local h^2 (larger of the two metric diagonals); points
/// where both diagonals vanish are reported as degenerate.
ConformalReport validate_conformal(const PartialsFn& derivatives, std::span<const UV> samples,
                                   double tolerance = 1e-9);
ConformalReport validate_conformal(const CoordinateMap& map, std::span<const UV> samples,
                                   double tolerance = 1e-9);

}  // namespace isopdm

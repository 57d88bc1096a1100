#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "isopdm/errors.hpp"
#include "isopdm/transform.hpp"
#include "test_support.hpp"

using namespace isopdm;
using isopdm::testing::builtin_maps;
using isopdm::testing::random_points;
using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

TEST(Transform, EvaluateClosedForms) {
  const XY par = evaluate(CoordinateMap::parabolic_cylinder(), 1.0, 1.0);
  EXPECT_DOUBLE_EQ(par.x, 1.0);
  EXPECT_DOUBLE_EQ(par.y, 0.0);

  const XY ell = evaluate(CoordinateMap::elliptic_cylinder(1.0), 0.0, 0.0);
  EXPECT_DOUBLE_EQ(ell.x, 0.0);
  EXPECT_DOUBLE_EQ(ell.y, 1.0);

  const XY bip = evaluate(CoordinateMap::bipolar(1.0), 0.0, kPi);
  EXPECT_NEAR(bip.x, 0.0, 1e-15);
  EXPECT_NEAR(bip.y, 0.0, 1e-15);
}

TEST(Transform, DomainErrors) {
  const auto bip = CoordinateMap::bipolar(1.0);
  EXPECT_THROW(evaluate(bip, 0.0, 0.0), DomainError);
  EXPECT_THROW(evaluate(bip, 0.0, 2.0 * kPi), DomainError);
  EXPECT_THROW(partials(bip, 0.0, 0.0), DomainError);
  EXPECT_THROW(evaluate(CoordinateMap::identity(), std::nan(""), 0.0), DomainError);
  EXPECT_THROW(jacobian(CoordinateMap::parabolic_cylinder(), INFINITY, 0.0), DomainError);
  EXPECT_NO_THROW(evaluate(bip, 1e-3, 0.0));
}

TEST(Transform, ConstructorInvariants) {
  EXPECT_THROW(CoordinateMap::polynomial({0.0, 0.0, 1.0, 1.0, Branch::Minus}), std::invalid_argument);
  EXPECT_THROW(CoordinateMap::elliptic_cylinder(0.0), std::invalid_argument);
  EXPECT_THROW(CoordinateMap::bipolar(-1.0), std::invalid_argument);
}

TEST(Transform, PartialsClosedForms) {
  const Partials par = partials(CoordinateMap::parabolic_cylinder(), 1.0, 1.0);
  EXPECT_DOUBLE_EQ(par.f_u, 1.0);
  EXPECT_DOUBLE_EQ(par.f_v, 1.0);
  EXPECT_DOUBLE_EQ(par.g_u, 1.0);
  EXPECT_DOUBLE_EQ(par.g_v, -1.0);

  const Partials id = partials(CoordinateMap::identity(), -3.2, 7.1);
  EXPECT_EQ(id.f_u, 1.0);
  EXPECT_EQ(id.f_v, 0.0);
  EXPECT_EQ(id.g_u, 0.0);
  EXPECT_EQ(id.g_v, 1.0);
}

// Analytic partials against central differences of evaluate().
TEST(Transform, PartialsMatchFiniteDifferences) {
  constexpr double step = 1e-5;
  auto check = [&](const CoordinateMap& map, UV p) {
    const Partials d = partials(map, p.u, p.v);
    auto fx = [&](double u, double v) { return evaluate(map, u, v).x; };
    auto fy = [&](double u, double v) { return evaluate(map, u, v).y; };
    const double fd[4] = {isopdm::testing::central_diff(fx, p.u, p.v, 0, step),
                          isopdm::testing::central_diff(fx, p.u, p.v, 1, step),
                          isopdm::testing::central_diff(fy, p.u, p.v, 0, step),
                          isopdm::testing::central_diff(fy, p.u, p.v, 1, step)};
    const double an[4] = {d.f_u, d.f_v, d.g_u, d.g_v};
    const double scale = std::max({std::abs(an[0]), std::abs(an[1]), std::abs(an[2]), std::abs(an[3])});
    for (int k = 0; k < 4; ++k)
      EXPECT_LT(std::abs(an[k] - fd[k]) / scale, 1e-6) << map.name() << " component " << k
                                                      << " at (" << p.u << ", " << p.v << ")";
  };
  check(CoordinateMap::elliptic_cylinder(2.0), {0.3, 0.7});
  for (const auto& map : builtin_maps())
    for (const UV& p : random_points(map, 200, 7)) check(map, p);
}

TEST(Transform, SecondPartialsMatchFiniteDifferences) {
  constexpr double step = 1e-5;
  for (const auto& map : builtin_maps()) {
    for (const UV& p : random_points(map, 100, 11)) {
      const SecondPartials dd = second_partials(map, p.u, p.v);
      auto comp = [&](int which) {
        return [&, which](double u, double v) {
          const Partials d = partials(map, u, v);
          const double c[4] = {d.f_u, d.f_v, d.g_u, d.g_v};
          return c[which];
        };
      };
      using isopdm::testing::central_diff;
      const double fd[6] = {central_diff(comp(0), p.u, p.v, 0, step),
                            central_diff(comp(0), p.u, p.v, 1, step),
                            central_diff(comp(1), p.u, p.v, 1, step),
                            central_diff(comp(2), p.u, p.v, 0, step),
                            central_diff(comp(2), p.u, p.v, 1, step),
                            central_diff(comp(3), p.u, p.v, 1, step)};
      const double an[6] = {dd.f_uu, dd.f_uv, dd.f_vv, dd.g_uu, dd.g_uv, dd.g_vv};
      double scale = 1e-12;
      for (double x : an) scale = std::max(scale, std::abs(x));
      for (int k = 0; k < 6; ++k)
        EXPECT_LT(std::abs(an[k] - fd[k]) / scale, 1e-6) << map.name() << " component " << k;
    }
  }
}

TEST(Transform, JacobianExamples) {
  EXPECT_DOUBLE_EQ(jacobian(CoordinateMap::parabolic_cylinder(), 1.0, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(jacobian(CoordinateMap::identity(), 0.4, -9.0), 1.0);
  const auto poly = CoordinateMap::polynomial({1.0, 1.0, 0.0, 0.0, Branch::Minus});
  EXPECT_DOUBLE_EQ(std::abs(jacobian(poly, 1.0, 1.0)), 4.0);
  EXPECT_LT(jacobian(poly, 1.0, 1.0), 0.0);
  const auto plus = CoordinateMap::polynomial({1.0, 1.0, 0.0, 0.0, Branch::Plus});
  EXPECT_DOUBLE_EQ(jacobian(plus, 1.0, 1.0), 4.0);
}

TEST(Transform, ScaleFactorExamples) {
  const auto poly = CoordinateMap::polynomial({1.0, 1.0, 0.0, 0.0, Branch::Minus});
  EXPECT_DOUBLE_EQ(scale_factor(poly, 1.0, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(scale_factor(CoordinateMap::elliptic_cylinder(1.0), 0.0, 0.0), 0.0);
  EXPECT_NEAR(scale_factor(CoordinateMap::bipolar(1.0), 0.0, kPi), 0.25, 1e-15);
}

TEST(Transform, AbsJacobianEqualsScaleFactor) {
  for (const auto& map : builtin_maps()) {
    for (const UV& p : random_points(map, 300, 3)) {
      const double h2 = scale_factor(map, p.u, p.v);
      EXPECT_LE(std::abs(std::abs(jacobian(map, p.u, p.v)) - h2), 1e-12 * h2) << map.name();
      EXPECT_GE(h2, 0.0);
    }
  }
}

TEST(Transform, ClosedFormScaleFactors) {
  const double c1 = 0.7, c2 = -1.3;
  const auto poly = CoordinateMap::polynomial({c1, c2, 0.4, 2.0, Branch::Plus});
  const double a = 2.0;
  const auto ell = CoordinateMap::elliptic_cylinder(a);
  const auto bip = CoordinateMap::bipolar(a);
  for (const UV& p : random_points(ell, 50, 5)) {
    const double u = p.u, v = p.v;
    EXPECT_NEAR(scale_factor(poly, u, v), (c1 * c1 + c2 * c2) * (u * u + v * v), 1e-12 * (1 + u * u + v * v));
    EXPECT_NEAR(scale_factor(ell, u, v), a * a * (std::cosh(2 * u) - std::cos(2 * v)) / 2.0,
                1e-12 * std::cosh(2 * u) * a * a);
    if (bip.contains(u, v) && std::cosh(u) - std::cos(v) > 0.05) {
      const double den = std::cos(v) - std::cosh(u);
      EXPECT_NEAR(scale_factor(bip, u, v), a * a / (den * den), 1e-11 * a * a / (den * den));
    }
  }
}

TEST(Transform, ValidateConformalParabolicLattice) {
  std::vector<UV> lattice;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) lattice.push_back({-2.0 + 4.0 * i / 9.0, -2.0 + 4.0 * j / 9.0});
  const auto report = validate_conformal(CoordinateMap::parabolic_cylinder(), lattice);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checked, 100u);
}

TEST(Transform, ValidateConformalBuiltins) {
  for (const auto& map : builtin_maps()) {
    const auto pts = random_points(map, 500, 19);
    const auto report = validate_conformal(map, pts);
    EXPECT_TRUE(report.passed()) << map.name() << " worst " << report.worst_value();
    EXPECT_LT(report.worst_value(), 1e-12);
  }
}

TEST(Transform, ValidateConformalFlagsDegeneratePoints) {
  const std::vector<UV> pts{{0.0, 0.0}, {0.5, 0.5}};
  const auto report = validate_conformal(CoordinateMap::elliptic_cylinder(1.0), pts);
  ASSERT_EQ(report.degenerate.size(), 1u);
  EXPECT_EQ(report.checked, 1u);
  EXPECT_TRUE(report.passed());
}

TEST(Transform, ValidateConformalRejectsNonConformalFixture) {
  // f = u^2, g = v^2: orthogonal but with unequal scales.
  const PartialsFn squares = [](double u, double v) { return Partials{2 * u, 0.0, 0.0, 2 * v}; };
  const std::vector<UV> pts{{1.0, 2.0}};
  const auto report = validate_conformal(squares, pts);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.crossed_failed);
  EXPECT_TRUE(report.scale_failed);
  EXPECT_DOUBLE_EQ(report.worst.scale, 12.0 / 16.0);
}

TEST(Transform, PolynomialReducesToParabolic) {
  const auto poly = CoordinateMap::polynomial(CoordinateMap::parabolic_as_polynomial());
  const auto par = CoordinateMap::parabolic_cylinder();
  for (const UV& p : random_points(par, 100, 23)) {
    const XY a = evaluate(poly, p.u, p.v), b = evaluate(par, p.u, p.v);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
  }
  // c2 = 1 on the Plus branch gives the rotated parabolic form
  // x = (u^2 - v^2)/2, y = u v used in the magnetic examples.
  const auto rotated = CoordinateMap::polynomial({0.0, 1.0, 0.0, 0.0, Branch::Plus});
  const XY r = evaluate(rotated, 2.0, 0.5);
  EXPECT_DOUBLE_EQ(r.x, 0.5 * (4.0 - 0.25));
  EXPECT_DOUBLE_EQ(r.y, 1.0);
}

// Closed-form inverses (test-only) map random (x,y) back into the
// fundamental domain; every target must be reached.
namespace {

cplx inverse(const CoordinateMap& map, cplx w) {
  switch (map.kind()) {
    case MapKind::Identity:
      return w;
    case MapKind::ParabolicCylinder:
    case MapKind::Polynomial: {
      const auto p = map.kind() == MapKind::Polynomial ? std::get<PolynomialParams>(map.params())
                                                       : CoordinateMap::parabolic_as_polynomial();
      const cplx d(p.d1, p.d2);
      if (p.branch == Branch::Plus) {
        // w - d = (c2 - i c1) z^2 / 2
        cplx z = std::sqrt(2.0 * (w - d) / cplx(p.c2, -p.c1));
        if (z.imag() < 0) z = -z;
        return z;
      }
      // w - d = (i/2)(c1 + i c2) conj(z)^2
      cplx zb = std::sqrt(2.0 * (w - d) / (cplx(0, 1) * cplx(p.c1, p.c2)));
      cplx z = std::conj(zb);
      if (z.imag() < 0) z = -z;
      return z;
    }
    case MapKind::EllipticCylinder: {
      // g + i f = a cos(v - i u)
      const double a = std::get<EllipticParams>(map.params()).a;
      const cplx s = std::acos(cplx(w.imag(), w.real()) / a);
      double u = -s.imag(), v = s.real();
      if (u < 0) {
        u = -u;
        v = -v;
      }
      v = std::fmod(v + 2 * kPi, 2 * kPi);
      return {u, v};
    }
    case MapKind::Bipolar: {
      // x + i y = i a cot((v + i u)/2)
      const double a = std::get<BipolarParams>(map.params()).a;
      const cplx s = 2.0 * std::atan(cplx(0, a) / w);
      return {s.imag(), std::fmod(s.real() + 4 * kPi, 2 * kPi)};
    }
  }
  return {};
}

}  // namespace

TEST(Transform, FundamentalDomainCoversPlane) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<CoordinateMap> maps = builtin_maps();
  maps.push_back(CoordinateMap::identity());
  for (const auto& map : maps) {
    const UVRect fund = map.fundamental();
    for (int k = 0; k < 1000; ++k) {
      const cplx w(dist(rng), dist(rng));
      const cplx z = inverse(map, w);
      ASSERT_TRUE(fund.contains({z.real(), z.imag()}) ||
                  (map.covering() == Covering::PeriodicInV && z.imag() >= 0 && z.imag() <= 2 * kPi))
          << map.name() << " preimage (" << z.real() << ", " << z.imag() << ")";
      const XY back = evaluate(map, z.real(), z.imag());
      EXPECT_NEAR(back.x, w.real(), 1e-9 * (1 + std::abs(w))) << map.name();
      EXPECT_NEAR(back.y, w.imag(), 1e-9 * (1 + std::abs(w))) << map.name();
    }
  }
}

TEST(Transform, CoveringDescriptors) {
  EXPECT_EQ(CoordinateMap::identity().covering(), Covering::SingleCover);
  EXPECT_EQ(CoordinateMap::parabolic_cylinder().covering(), Covering::DoubleCover);
  EXPECT_EQ(CoordinateMap::elliptic_cylinder(1).covering(), Covering::PeriodicInV);
  EXPECT_EQ(CoordinateMap::elliptic_cylinder(1).fundamental().u_min, 0.0);
  EXPECT_EQ(CoordinateMap::bipolar(1).fundamental().v_max, 2 * kPi);
  EXPECT_EQ(CoordinateMap::parabolic_cylinder().fundamental().v_min, 0.0);
}

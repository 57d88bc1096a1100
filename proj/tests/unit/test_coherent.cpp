#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "isopdm/coherent.hpp"
#include "isopdm/errors.hpp"
#include "test_support.hpp"

using namespace isopdm;

namespace {

const OscillatorParams kUnit{1.0, 1.0, 1.0, 1.0};

PdmSystem make(CoordinateMap map, OscillatorParams osc = kUnit) { return {map, osc, MassForm::Derived}; }

// Direct double-precision sum over K, independent of the library's
// compensated accumulation and Hermite-function recurrence.
double naive_density(const CoherentSpec& spec, const OscillatorParams& osc, double x, double y) {
  std::complex<double> sum = 0.0;
  const double norm = std::pow(1.0 + spec.A * spec.A, -0.5 * spec.L);
  for (int K = 0; K <= spec.L; ++K) {
    const ModeIndex mode = mode_assignment(spec, K);
    const double b = std::sqrt(boost::math::binomial_coefficient<double>(unsigned(spec.L), unsigned(K)));
    const std::complex<double> tau = std::polar(spec.A, spec.phi);
    sum += norm * b * std::pow(tau, K) * eigenfunction_xy(osc, mode, x, y);
  }
  return std::norm(sum);
}

}  // namespace

TEST(Weights, Examples) {
  CoherentSpec zero;
  zero.A = 0.0;
  const auto w0 = weights(zero);
  ASSERT_EQ(w0.size(), 21u);
  EXPECT_EQ(w0[0], std::complex<double>(1.0));
  for (std::size_t K = 1; K < w0.size(); ++K) EXPECT_EQ(w0[K], std::complex<double>(0.0));

  const auto w = weights(CoherentSpec{});
  for (int K = 0; K <= 20; ++K)
    EXPECT_NEAR(std::norm(w[std::size_t(K)]), boost::math::binomial_coefficient<double>(20, unsigned(K)) / 1048576.0,
                1e-15);
  EXPECT_NEAR(std::norm(w[10]), 0.176197, 1e-6);
  // tau^K with phi = pi/2 cycles through 1, i, -1, -i.
  EXPECT_NEAR(w[1].real(), 0.0, 1e-16);
  EXPECT_GT(w[1].imag(), 0.0);
  EXPECT_LT(w[2].real(), 0.0);
}

TEST(Weights, NormalizedToMachinePrecision) {
  for (double A : {0.0, 0.5, 1.0, 2.0})
    for (int L : {1, 5, 20}) {
      CoherentSpec s;
      s.A = A;
      s.L = L;
      double total = 0.0;
      for (const auto& w : weights(s)) total += std::norm(w);
      EXPECT_NEAR(total, 1.0, 1e-12) << A << ' ' << L;
    }
  CoherentSpec big;
  big.L = 400;
  big.A = 3.0;
  double total = 0.0;
  for (const auto& w : weights(big)) total += std::norm(w);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Spec, Validation) {
  CoherentSpec s;
  EXPECT_NO_THROW(s.validate());
  s.L = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.p = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.A = -1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.p = 2;
  s.q = 4;
  EXPECT_NO_THROW(s.validate());
  EXPECT_FALSE(s.reduced());
}

TEST(ModeAssignment, Examples) {
  CoherentSpec s;
  EXPECT_EQ(mode_assignment(s, 7), (ModeIndex{13, 7}));
  s.p = 2;
  s.q = 3;
  EXPECT_EQ(mode_assignment(s, 0), (ModeIndex{40, 0}));
  EXPECT_THROW(mode_assignment(s, -1), RangeError);
  EXPECT_THROW(mode_assignment(s, 21), RangeError);
  s.convention = ModeConvention::Printed;
  EXPECT_EQ(mode_assignment(s, 0), (ModeIndex{60, 0}));
  EXPECT_EQ(mode_assignment(s, 20), (ModeIndex{0, 40}));
}

TEST(ModeAssignment, DegenerateEnergies) {
  CoherentSpec s;
  s.L = 4;
  s.p = 2;
  s.q = 3;
  const OscillatorParams osc{1.0, 1.0, 3.0, 2.0};
  for (int K = 0; K <= 4; ++K) EXPECT_EQ(term_energy(s, osc, K), 26.5);

  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
    CoherentSpec c;
    c.p = p;
    c.q = q;
    const OscillatorParams o{1.0, 1.0, double(q), double(p)};
    for (int K = 0; K <= c.L; ++K) EXPECT_EQ(term_energy(c, o, K) - term_energy(c, o, 0), 0.0) << p << q << K;
    c.convention = ModeConvention::Printed;
    if (p != q) EXPECT_NE(term_energy(c, o, 1), term_energy(c, o, 0));
  }
}

TEST(Amplitude, MatchesNaiveSum) {
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}}) {
    CoherentSpec s;
    s.p = p;
    s.q = q;
    s.L = 8;
    s.A = 0.8;
    s.phi = 0.4;
    const OscillatorParams o{1.0, 1.0, double(q), double(p)};
    const auto w = weights(s);
    for (double x : {-2.1, 0.3, 1.7})
      for (double y : {-0.8, 0.0, 2.2}) {
        const double want = naive_density(s, o, x, y);
        EXPECT_NEAR(std::norm(coherent_amplitude_xy(s, w, o, x, y)), want, 1e-13 + 1e-11 * want);
      }
  }
}

TEST(Amplitude, ScalingWeightsQuadruplesDensity) {
  CoherentSpec s;
  auto w = weights(s);
  const double base = std::norm(coherent_amplitude_xy(s, w, kUnit, 3.1, 2.9));
  for (auto& x : w) x *= 2.0;
  EXPECT_EQ(std::norm(coherent_amplitude_xy(s, w, kUnit, 3.1, 2.9)), 4.0 * base);
}

TEST(Density, SingleTermWhenAIsZero) {
  CoherentSpec s;
  s.A = 0.0;
  s.L = 3;
  const auto sys = make(CoordinateMap::parabolic_cylinder());
  const Grid2D grid(-2, 2, 0, 2, 9, 5);
  const auto d = su2_density(s, sys, grid);
  for (int i = 0; i < grid.nu(); ++i)
    for (int j = 0; j < grid.nv(); ++j) {
      const double psi = wavefunction_uv(sys, {3, 0}, grid.u(i), grid.v(j));
      EXPECT_NEAR(d(i, j), psi * psi, 1e-15);
    }
}

TEST(Density, IdentityRidgeIsCircle) {
  // |Phi|^2 is proportional to r^(2L) exp(-r^2): maximum at r = sqrt(L).
  const Grid2D grid(-7, 7, -7, 7, 281, 281);
  const auto d = su2_density(CoherentSpec{}, make(CoordinateMap::identity()), grid);
  std::vector<double> radii;
  for (int k = 0; k < 16; ++k) {
    // Ray search for the maximum along angle 2 pi k / 16 by sampling the
    // analytic density used by the library.
    const double th = 2 * std::numbers::pi * k / 16;
    const auto w = weights(CoherentSpec{});
    double best = 0, best_r = 0;
    for (double r = 3.0; r <= 6.0; r += 1e-3) {
      const double v = std::norm(coherent_amplitude_xy(CoherentSpec{}, w, kUnit, r * std::cos(th), r * std::sin(th)));
      if (v > best) {
        best = v;
        best_r = r;
      }
    }
    radii.push_back(best_r);
  }
  for (double r : radii) EXPECT_NEAR(r, std::sqrt(20.0), 2e-3);
  EXPECT_EQ(level_set_components(d, 0.95), 1);
}

TEST(Density, WeightedTotalProbability) {
  const auto id = make(CoordinateMap::identity());
  const auto par = make(CoordinateMap::parabolic_cylinder());
  const CoherentSpec s;
  const auto di = su2_density(s, id, Grid2D(-8, 8, -8, 8, 301, 301), {.weighted = true});
  const auto dp = su2_density(s, par, Grid2D(-4, 4, 0, 4, 301, 301), {.weighted = true});
  auto sum = [](const Field2D<double>& f) {
    const Grid2D& g = f.grid();
    double total = 0;
    for (double x : f.values()) total += x;
    return total * g.hu() * g.hv();
  };
  EXPECT_NEAR(sum(di), 1.0, 2e-2);
  EXPECT_NEAR(sum(dp), 1.0, 2e-2);
}

TEST(Density, PolynomialRidgeSplitsWithShift) {
  const CoherentSpec s;
  const Grid2D grid(-5, 5, -5, 5, 301, 301);
  auto ridge = [&](double d2) {
    const auto sys = make(CoordinateMap::polynomial({1.0, 1.0, 0.0, d2, Branch::Minus}));
    return level_set_components(su2_density(s, sys, grid), 0.95);
  };
  EXPECT_EQ(ridge(4.0), 1);
  EXPECT_EQ(ridge(7.0), 2);
}

TEST(Components, SimplePatterns) {
  const Grid2D grid(0, 1, 0, 1, 5, 6);
  Field2D<double> f(grid, 0.0);
  f(0, 0) = 1;
  f(1, 1) = 1;  // diagonal neighbour
  f(4, 0) = 1;
  f(4, 5) = 1;
  EXPECT_EQ(level_set_components(f, 0.5), 3);
  EXPECT_EQ(level_set_components(f, 0.5, true), 2);
}

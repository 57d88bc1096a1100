#include "isopdm/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "isopdm/errors.hpp"

namespace isopdm {
namespace {

void require_degree(int n) {
  if (n < 0 || n > kMaxHermiteDegree)
    throw RangeError("Hermite degree " + std::to_string(n) + " outside validated range [0, " +
                     std::to_string(kMaxHermiteDegree) + "]");
}

// Renormalize the recurrence once magnitudes pass this.
constexpr double kRescaleAbove = 1e100;

}  // namespace

void OscillatorParams::validate() const {
  const auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!ok(m0)) throw std::invalid_argument("oscillator: m0 must be positive");
  if (!ok(hbar)) throw std::invalid_argument("oscillator: hbar must be positive");
  if (!ok(omega1)) throw std::invalid_argument("oscillator: omega1 must be positive");
  if (!ok(omega2)) throw std::invalid_argument("oscillator: omega2 must be positive");
}

double OscillatorParams::length_x() const { return std::sqrt(2.0 * hbar / (m0 * omega1)); }
double OscillatorParams::length_y() const { return std::sqrt(2.0 * hbar / (m0 * omega2)); }

double hermite(int n, double x) {
  require_degree(n);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

std::vector<double> hermite_functions(int nmax, double xi) {
  require_degree(nmax);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  // Run the orthonormal recurrence on the polynomial part only; the common
  // factor exp(log_scale - xi^2/2) is folded back in per index.
  double log_scale = 0.0;
  double prev = 0.0;
  double curr = std::pow(std::numbers::pi, -0.25);
  const double gauss = -0.5 * xi * xi;
  out[0] = curr * std::exp(gauss);
  for (int k = 0; k < nmax; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * curr - std::sqrt(double(k) / (k + 1)) * prev;
    prev = curr;
    curr = next;
    if (std::abs(curr) > kRescaleAbove) {
      prev /= kRescaleAbove;
      curr /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
    out[static_cast<std::size_t>(k) + 1] = curr * std::exp(gauss + log_scale);
  }
  return out;
}

double eigenfunction_xy(const OscillatorParams& params, ModeIndex mode, double x, double y) {
  if (mode.m < 0 || mode.n < 0) throw RangeError("mode indices must be non-negative");
  const double X = params.length_x();
  const double Y = params.length_y();
  const double xi = std::numbers::sqrt2 * x / X;
  const double eta = std::numbers::sqrt2 * y / Y;
  const double phi_x = hermite_functions(mode.m, xi).back();
  const double phi_y = hermite_functions(mode.n, eta).back();
  // d xi / dx = sqrt2 / X carries the 1D functions from xi to x.
  return std::sqrt(2.0 / (X * Y)) * phi_x * phi_y;
}

double energy(const OscillatorParams& params, ModeIndex mode) {
  return params.hbar * (params.omega1 * (mode.m + 0.5) + params.omega2 * (mode.n + 0.5));
}

}  // namespace isopdm

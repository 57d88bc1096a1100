#include "isopdm/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "isopdm/errors.hpp"

namespace isopdm {
namespace {

// Neumaier summation in long double.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

double mass_ratio(const CoordinateMap& map, double u, double v) {
  const Partials d = partials(map, u, v);
  const double h2 = scale_factor(d);
  if (h2 == 0.0) return 0.0;
  const double J = jacobian(d);
  return J * J / h2;
}

}  // namespace

void CoherentSpec::validate() const {
  if (p < 1 || q < 1) throw std::invalid_argument("coherent: p and q must be positive integers");
  if (L < 1) throw std::invalid_argument("coherent: L must be at least 1");
  if (!(std::isfinite(A) && A >= 0.0)) throw std::invalid_argument("coherent: A must be >= 0");
  if (!std::isfinite(phi)) throw std::invalid_argument("coherent: phi must be finite");
}

bool CoherentSpec::reduced() const noexcept { return std::gcd(p, q) == 1; }

std::vector<std::complex<double>> weights(const CoherentSpec& spec) {
  spec.validate();
  std::vector<std::complex<double>> w(static_cast<std::size_t>(spec.L) + 1, 0.0);
  if (spec.A == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double L = spec.L;
  const double log_norm = -0.5 * L * std::log1p(spec.A * spec.A);
  for (int K = 0; K <= spec.L; ++K) {
    const double log_binom = std::lgamma(L + 1) - std::lgamma(K + 1.0) - std::lgamma(L - K + 1);
    const double magnitude = std::exp(log_norm + 0.5 * log_binom + K * std::log(spec.A));
    w[static_cast<std::size_t>(K)] = std::polar(magnitude, K * spec.phi);
  }
  return w;
}

ModeIndex mode_assignment(const CoherentSpec& spec, int K) {
  if (K < 0 || K > spec.L)
    throw RangeError("coherent: K = " + std::to_string(K) + " outside [0, " +
                     std::to_string(spec.L) + "]");
  if (spec.convention == ModeConvention::Printed) return {spec.q * (spec.L - K), spec.p * K};
  return {spec.p * (spec.L - K), spec.q * K};
}

double term_energy(const CoherentSpec& spec, const OscillatorParams& osc, int K) {
  return energy(osc, mode_assignment(spec, K));
}

std::complex<double> coherent_amplitude_xy(const CoherentSpec& spec,
                                           const std::vector<std::complex<double>>& w,
                                           const OscillatorParams& osc, double x, double y) {
  const ModeIndex top0 = mode_assignment(spec, 0);
  const ModeIndex topL = mode_assignment(spec, spec.L);
  const int m_max = std::max(top0.m, topL.m);
  const int n_max = std::max(top0.n, topL.n);

  const double X = osc.length_x();
  const double Y = osc.length_y();
  const auto phi_x = hermite_functions(m_max, std::numbers::sqrt2 * x / X);
  const auto phi_y = hermite_functions(n_max, std::numbers::sqrt2 * y / Y);
  const double scale = std::sqrt(2.0 / (X * Y));

  CompensatedSum re, im;
  for (int K = 0; K <= spec.L; ++K) {
    const std::complex<double> wk = w[static_cast<std::size_t>(K)];
    if (wk == 0.0) continue;
    const ModeIndex mode = mode_assignment(spec, K);
    const long double psi = static_cast<long double>(scale) * phi_x[std::size_t(mode.m)] *
                            phi_y[std::size_t(mode.n)];
    re.add(psi * wk.real());
    im.add(psi * wk.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

Field2D<double> su2_density(const CoherentSpec& spec, const PdmSystem& sys, const Grid2D& grid,
                            DensityOptions options) {
  const auto w = weights(spec);
  return sample(grid, [&](double u, double v) {
    const XY p = evaluate(sys.map, u, v);
    const double rho = std::norm(coherent_amplitude_xy(spec, w, sys.osc, p.x, p.y));
    return options.weighted ? rho * mass_at(sys, u, v) / sys.osc.m0 : rho;
  });
}

Field2D<double> magnetic_su2_density(const CoherentSpec& spec, const CoordinateMap& map,
                                     const MagneticParams& params, const Grid2D& grid, double t,
                                     DensityOptions options) {
  const auto w = weights(spec);
  const OscillatorParams frame = rotating_frame_oscillator(params);
  const double angle = alpha(params, t);
  return sample(grid, [&](double u, double v) {
    const XY p = evaluate(map, u, v);
    const XY r = rotate_to_frame(angle, p.x, p.y);
    const double rho = std::norm(coherent_amplitude_xy(spec, w, frame, r.x, r.y));
    return options.weighted ? rho * mass_ratio(map, u, v) : rho;
  });
}

int level_set_components(const Field2D<double>& field, double fraction, bool periodic_v) {
  const Grid2D& g = field.grid();
  const auto& values = field.values();
  const double peak = *std::max_element(values.begin(), values.end());
  const double level = fraction * peak;
  const int nu = g.nu();
  const int nv = periodic_v ? g.nv() - 1 : g.nv();

  std::vector<int> label(g.size(), -1);
  std::vector<std::pair<int, int>> stack;
  int count = 0;
  for (int i0 = 0; i0 < nu; ++i0) {
    for (int j0 = 0; j0 < nv; ++j0) {
      if (label[g.index(i0, j0)] >= 0 || !(field(i0, j0) >= level)) continue;
      label[g.index(i0, j0)] = count;
      stack.push_back({i0, j0});
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            const int a = i + di;
            int b = j + dj;
            if (a < 0 || a >= nu) continue;
            if (periodic_v)
              b = (b + nv) % nv;
            else if (b < 0 || b >= nv)
              continue;
            const std::size_t k = g.index(a, b);
            if (label[k] >= 0 || !(values[k] >= level)) continue;
            label[k] = count;
            stack.push_back({a, b});
          }
        }
      }
      ++count;
    }
  }
  return count;
}

}  // namespace isopdm

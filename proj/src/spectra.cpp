#include "isopdm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "isopdm/errors.hpp"

namespace isopdm {
namespace {

constexpr double kSymmetryTolerance = 1e-10;

void project_even(const std::vector<int>& reflection, Eigen::MatrixXd& X) {
  if (reflection.empty()) return;
  Eigen::MatrixXd mirrored(X.rows(), X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) mirrored.row(r) = X.row(reflection[std::size_t(r)]);
  X = 0.5 * (X + mirrored);
}

bool close(double a, double b) {
  return std::abs(a - b) <= kSymmetryTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Eigen::VectorXd GeneralizedEigenProblem::to_unknowns(const Field2D<double>& field) const {
  if (!(field.grid() == grid)) throw std::invalid_argument("to_unknowns: grid mismatch");
  Eigen::VectorXd x(size());
  for (std::size_t k = 0; k < nodes.size(); ++k) x[Eigen::Index(k)] = field(nodes[k].first, nodes[k].second);
  return x;
}

GeneralizedEigenProblem discretize(const PdmSystem& sys, const Grid2D& grid,
                                   DiscretizeOptions options) {
  const int nu = grid.nu(), nv = grid.nv();
  const bool periodic = options.periodic_v;
  const int j_begin = periodic ? 0 : 1;
  const int j_end = nv - 1;  // exclusive; the periodic duplicate column is dropped
  const int i_begin = 1, i_end = nu - 1;
  const int ncols = j_end - j_begin;

  auto unknown = [&](int i, int j) { return (i - i_begin) * ncols + (j - j_begin); };

  GeneralizedEigenProblem prob{{}, {}, grid, options, {}, {}};
  const int n = (i_end - i_begin) * ncols;
  prob.B.resize(n);
  prob.nodes.reserve(std::size_t(n));

  Eigen::VectorXd potential(n);
  std::vector<UV> bad;
  for (int i = i_begin; i < i_end; ++i) {
    for (int j = j_begin; j < j_end; ++j) {
      const double u = grid.u(i), v = grid.v(j);
      prob.nodes.emplace_back(i, j);
      const int k = unknown(i, j);
      if (!sys.map.contains(u, v) || degenerate_at(sys, u, v)) {
        bad.push_back({u, v});
        continue;
      }
      prob.B[k] = mass_at(sys, u, v);
      potential[k] = potential_at(sys, u, v);
      if (!(prob.B[k] > 0.0)) bad.push_back({u, v});
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "discretize: " << bad.size() << " degenerate or excluded node(s) inside the grid:";
    for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 8); ++k)
      os << " (" << bad[k].u << ", " << bad[k].v << ")";
    if (bad.size() > 8) os << " ...";
    throw DomainError(os.str());
  }

  const double kin = 0.5 * sys.osc.hbar * sys.osc.hbar;
  const double cu = kin / (grid.hu() * grid.hu());
  const double cv = kin / (grid.hv() * grid.hv());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(std::size_t(n) * 5);
  for (int i = i_begin; i < i_end; ++i) {
    for (int j = j_begin; j < j_end; ++j) {
      const int k = unknown(i, j);
      triplets.emplace_back(k, k, 2.0 * cu + 2.0 * cv + prob.B[k] * potential[k]);
      if (i - 1 >= i_begin) triplets.emplace_back(k, unknown(i - 1, j), -cu);
      if (i + 1 < i_end) triplets.emplace_back(k, unknown(i + 1, j), -cu);
      if (periodic) {
        triplets.emplace_back(k, unknown(i, j == 0 ? ncols - 1 : j - 1), -cv);
        triplets.emplace_back(k, unknown(i, j == ncols - 1 ? 0 : j + 1), -cv);
      } else {
        if (j - 1 >= j_begin) triplets.emplace_back(k, unknown(i, j - 1), -cv);
        if (j + 1 < j_end) triplets.emplace_back(k, unknown(i, j + 1), -cv);
      }
    }
  }
  prob.A.resize(n, n);
  prob.A.setFromTriplets(triplets.begin(), triplets.end());

  if (options.sector == Sector::EvenUnderReflection) {
    prob.reflection.resize(std::size_t(n));
    for (int i = i_begin; i < i_end; ++i) {
      for (int j = j_begin; j < j_end; ++j) {
        const int mi = nu - 1 - i;
        const int mj = periodic ? (ncols - j) % ncols : nv - 1 - j;
        const int k = unknown(i, j), mk = unknown(mi, mj);
        if (!close(prob.B[k], prob.B[mk]) || !close(potential[k], potential[mk]))
          throw std::invalid_argument(
              "discretize: mass or potential is not symmetric under the grid reflection");
        prob.reflection[std::size_t(k)] = mk;
      }
    }
  }
  return prob;
}

EigenSolveResult solve_lowest(const GeneralizedEigenProblem& prob, int k,
                              const EigenSolveOptions& options) {
  const Eigen::Index n = prob.size();
  if (k < 1) throw std::invalid_argument("solve_lowest: k must be >= 1");
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_lowest: tol must be positive");
  int block = options.block > 0 ? options.block : std::max(2 * k, k + 6);
  block = int(std::min<Eigen::Index>(block, n));
  if (k > block) throw std::invalid_argument("solve_lowest: k exceeds problem size");

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(prob.A);
  if (factor.info() != Eigen::Success)
    throw std::runtime_error("solve_lowest: stiffness matrix factorization failed");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, block);
  for (Eigen::Index c = 0; c < X.cols(); ++c)
    for (Eigen::Index r = 0; r < n; ++r) X(r, c) = normal(rng);
  project_even(prob.reflection, X);

  const auto& Bd = prob.B;
  std::vector<double> best(std::size_t(k), std::numeric_limits<double>::infinity());
  EigenSolveResult result;

  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd Y = factor.solve(Bd.asDiagonal() * X);
    project_even(prob.reflection, Y);

    const Eigen::MatrixXd BY = Bd.asDiagonal() * Y;
    Eigen::MatrixXd Ar = Y.transpose() * (prob.A * Y);
    Eigen::MatrixXd Br = Y.transpose() * BY;
    Ar = 0.5 * (Ar + Ar.transpose()).eval();
    Br = 0.5 * (Br + Br.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(Ar, Br);
    if (ritz.info() != Eigen::Success)
      throw std::runtime_error("solve_lowest: Rayleigh-Ritz step failed");
    X = Y * ritz.eigenvectors();  // B-orthonormal, ascending Ritz values

    result.values.assign(std::size_t(k), 0.0);
    result.residuals.assign(std::size_t(k), 0.0);
    bool converged = true;
    for (int c = 0; c < k; ++c) {
      const double theta = ritz.eigenvalues()[c];
      const Eigen::VectorXd Bx = Bd.asDiagonal() * X.col(c);
      const double res = (prob.A * X.col(c) - theta * Bx).norm() / Bx.norm();
      result.values[std::size_t(c)] = theta;
      result.residuals[std::size_t(c)] = res;
      best[std::size_t(c)] = std::min(best[std::size_t(c)], res);
      if (!(res <= options.tol)) converged = false;
    }
    result.iterations = it;
    if (converged) return result;
  }
  throw ConvergenceError("solve_lowest: no convergence within " +
                             std::to_string(options.max_iterations) + " iterations",
                         best);
}

std::vector<double> lowest_eigenvalues(const GeneralizedEigenProblem& prob, int k, double tol,
                                       std::uint64_t seed) {
  EigenSolveOptions options;
  options.tol = tol;
  options.seed = seed;
  return solve_lowest(prob, k, options).values;
}

double rayleigh_quotient(const GeneralizedEigenProblem& prob, const Eigen::VectorXd& x) {
  return x.dot(prob.A * x) / x.dot(prob.B.asDiagonal() * x);
}

double quadrature(const Field2D<double>& field, const std::optional<Field2D<double>>& weight) {
  const Grid2D& g = field.grid();
  if (weight && !(weight->grid() == g))
    throw std::invalid_argument("quadrature: field and weight grids differ");
  long double total = 0.0L;
  for (int i = 0; i < g.nu(); ++i) {
    const double wu = (i == 0 || i == g.nu() - 1) ? 0.5 : 1.0;
    for (int j = 0; j < g.nv(); ++j) {
      const double wv = (j == 0 || j == g.nv() - 1) ? 0.5 : 1.0;
      const double value = weight ? field(i, j) * (*weight)(i, j) : field(i, j);
      total += static_cast<long double>(wu * wv * value);
    }
  }
  return static_cast<double>(total) * g.hu() * g.hv();
}

}  // namespace isopdm

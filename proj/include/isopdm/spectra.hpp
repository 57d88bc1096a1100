#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "isopdm/grid.hpp"
#include "isopdm/pdm.hpp"

namespace isopdm {

/// Subspace of grid functions the eigensolver works in.
enum class Sector {
  All,
  /// Functions invariant under the point reflection of the grid
  /// (u -> u_min + u_max - u; v -> v_min + v_max - v, or v -> 2 v_min - v
  /// modulo the period when v is periodic). On a double-covering lattice
  /// this is exactly the set of functions that descend to the (x,y) plane.
  EvenUnderReflection,
};

struct DiscretizeOptions {
  /// Treat [v_min, v_max) as one period. The node at v_max duplicates v_min.
  bool periodic_v = false;
  Sector sector = Sector::All;
};

/// A x = E B x for the PDM operator multiplied through by M:
///   -hbar^2/2 (d_uu + d_vv) psi + M V psi = E M psi,
/// 5-point Laplacian, zero Dirichlet values on the non-periodic edges.
struct GeneralizedEigenProblem {
  Eigen::SparseMatrix<double> A;  ///< symmetric positive definite stiffness
  Eigen::VectorXd B;              ///< diagonal mass weights M(u,v) > 0
  Grid2D grid;
  DiscretizeOptions options;
  std::vector<std::pair<int, int>> nodes;  ///< grid (i, j) of each unknown
  std::vector<int> reflection;             ///< unknown -> mirrored unknown; empty for Sector::All

  Eigen::Index size() const noexcept { return B.size(); }
  /// Restriction of a grid field to the unknowns.
  Eigen::VectorXd to_unknowns(const Field2D<double>& field) const;
};

/// Throws DomainError if any unknown lies on a degenerate (M = 0) or
/// excluded node, listing the offenders; std::invalid_argument if the
/// requested reflection sector is not a symmetry of M and V on this grid.
GeneralizedEigenProblem discretize(const PdmSystem& sys, const Grid2D& grid,
                                   DiscretizeOptions options = {});

struct EigenSolveOptions {
  double tol = 1e-8;        ///< per-pair bound on |A x - E B x| / |B x|
  int max_iterations = 500;
  std::uint64_t seed = 12345;
  int block = 0;            ///< subspace size; 0 picks max(2k, k + 6)
};

struct EigenSolveResult {
  std::vector<double> values;     ///< ascending
  std::vector<double> residuals;  ///< |A x - E B x| / |B x| per value
  int iterations = 0;
};

/// k smallest eigenvalues by shift-invert block subspace iteration with
/// Rayleigh-Ritz. Deterministic for a fixed seed. Throws ConvergenceError
/// with the best residuals if the budget runs out.
EigenSolveResult solve_lowest(const GeneralizedEigenProblem& prob, int k,
                              const EigenSolveOptions& options = {});

/// Convenience wrapper returning only the eigenvalues.
std::vector<double> lowest_eigenvalues(const GeneralizedEigenProblem& prob, int k, double tol,
                                       std::uint64_t seed = 12345);

/// x^T A x / x^T B x.
double rayleigh_quotient(const GeneralizedEigenProblem& prob, const Eigen::VectorXd& x);

/// Tensor-product trapezoidal rule of field * weight. Throws
/// std::invalid_argument when the grids differ.
double quadrature(const Field2D<double>& field,
                  const std::optional<Field2D<double>>& weight = std::nullopt);

}  // namespace isopdm

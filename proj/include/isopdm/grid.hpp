#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "isopdm/transform.hpp"

namespace isopdm {

/// Uniform tensor lattice on [u_min, u_max] x [v_min, v_max], both ends
/// included. Node (i, j) sits at (u_min + i hu, v_min + j hv).
class Grid2D {
 public:
  /// Throws std::invalid_argument unless u_min < u_max, v_min < v_max and
  /// nu, nv >= 3.
  Grid2D(double u_min, double u_max, double v_min, double v_max, int nu, int nv);

  double u_min() const noexcept { return u_min_; }
  double u_max() const noexcept { return u_max_; }
  double v_min() const noexcept { return v_min_; }
  double v_max() const noexcept { return v_max_; }
  int nu() const noexcept { return nu_; }
  int nv() const noexcept { return nv_; }
  double hu() const noexcept { return (u_max_ - u_min_) / (nu_ - 1); }
  double hv() const noexcept { return (v_max_ - v_min_) / (nv_ - 1); }

  double u(int i) const noexcept { return u_min_ + i * hu(); }
  double v(int j) const noexcept { return v_min_ + j * hv(); }
  UV node(int i, int j) const noexcept { return {u(i), v(j)}; }

  std::size_t size() const noexcept { return std::size_t(nu_) * std::size_t(nv_); }
  /// Row-major in u: index = i * nv + j.
  std::size_t index(int i, int j) const noexcept { return std::size_t(i) * nv_ + j; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  double u_min_, u_max_, v_min_, v_max_;
  int nu_, nv_;
};

/// Values sampled on every node of a Grid2D, row-major in u.
template <class T>
class Field2D {
 public:
  explicit Field2D(Grid2D grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}
  Field2D(Grid2D grid, std::vector<T> values);

  const Grid2D& grid() const noexcept { return grid_; }
  std::vector<T>& values() noexcept { return values_; }
  const std::vector<T>& values() const noexcept { return values_; }

  T& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }

 private:
  Grid2D grid_;
  std::vector<T> values_;
};

template <class T>
Field2D<T>::Field2D(Grid2D grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("Field2D: value count does not match grid");
}

/// Sample fn(u, v) on every node.
template <class Fn>
auto sample(const Grid2D& grid, Fn&& fn) {
  using T = decltype(fn(0.0, 0.0));
  Field2D<T> out(grid);
  for (int i = 0; i < grid.nu(); ++i)
    for (int j = 0; j < grid.nv(); ++j) out(i, j) = fn(grid.u(i), grid.v(j));
  return out;
}

}  // namespace isopdm

#include "isopdm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace isopdm {

Grid2D::Grid2D(double u_min, double u_max, double v_min, double v_max, int nu, int nv)
    : u_min_(u_min), u_max_(u_max), v_min_(v_min), v_max_(v_max), nu_(nu), nv_(nv) {
  if (!(std::isfinite(u_min) && std::isfinite(u_max) && std::isfinite(v_min) &&
        std::isfinite(v_max)))
    throw std::invalid_argument("Grid2D: bounds must be finite");
  if (!(u_min < u_max)) throw std::invalid_argument("Grid2D: require u_min < u_max");
  if (!(v_min < v_max)) throw std::invalid_argument("Grid2D: require v_min < v_max");
  if (nu < 3 || nv < 3) throw std::invalid_argument("Grid2D: require at least 3 nodes per axis");
}

}  // namespace isopdm

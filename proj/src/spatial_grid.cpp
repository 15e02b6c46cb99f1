#include "ballshape/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

namespace ballshape {

PointGrid::PointGrid(const std::vector<Vec3>& points, double cell_size)
    : points_(points), cell_(cell_size) {
  Vec3 lo = points[0], hi = points[0];
  for (const Vec3& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  origin_ = lo;
  const Vec3 extent = hi - lo;
  for (int k = 0; k < 3; ++k) {
    dims_[k] = std::max(1, static_cast<int>(std::floor(extent[k] / cell_)) + 1);
    dims_[k] = std::min(dims_[k], 256);  // bounded memory for tiny cells
  }
  // Recompute the effective cell size per axis via a single scalar: use the
  // largest required so integer coords stay in range.
  for (int k = 0; k < 3; ++k) {
    const double needed = extent[k] / dims_[k];
    if (needed > cell_) cell_ = needed * (1.0 + 1e-12);
  }
  cells_.assign(static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2], {});
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    int c[3];
    coords_of(points[i], c);
    cells_[cell_index(c[0], c[1], c[2])].push_back(i);
  }
}

void PointGrid::coords_of(const Vec3& p, int out[3]) const {
  for (int k = 0; k < 3; ++k) {
    int c = static_cast<int>(std::floor((p[k] - origin_[k]) / cell_));
    out[k] = std::clamp(c, 0, dims_[k] - 1);
  }
}

void PointGrid::for_each_candidate(const Vec3& center, double radius,
                                   const std::function<void(int)>& visit) const {
  int lo[3], hi[3];
  const Vec3 r(radius, radius, radius);
  coords_of(center - r, lo);
  coords_of(center + r, hi);
  for (int iz = lo[2]; iz <= hi[2]; ++iz)
    for (int iy = lo[1]; iy <= hi[1]; ++iy)
      for (int ix = lo[0]; ix <= hi[0]; ++ix)
        for (int i : cells_[cell_index(ix, iy, iz)]) visit(i);
}

}  // namespace ballshape

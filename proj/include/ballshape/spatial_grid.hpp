#ifndef BALLSHAPE_SPATIAL_GRID_HPP
#define BALLSHAPE_SPATIAL_GRID_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ballshape/geometry.hpp"

namespace ballshape {

// Uniform grid over a point set. Cells are addressed by integer coordinates
// clamped to the bounding box, so every query terminates even for centers
// far outside.
class PointGrid {
 public:
  PointGrid(const std::vector<Vec3>& points, double cell_size);

  // Calls visit(i) for every point i whose cell intersects the ball
  // B(center, radius). Superset of the exact in-ball set.
  void for_each_candidate(const Vec3& center, double radius,
                          const std::function<void(int)>& visit) const;

  double cell_size() const { return cell_; }

 private:
  const std::vector<Vec3>& points_;
  double cell_;
  Vec3 origin_;
  int dims_[3];
  std::vector<std::vector<int>> cells_;

  int cell_index(int ix, int iy, int iz) const {
    return (iz * dims_[1] + iy) * dims_[0] + ix;
  }
  void coords_of(const Vec3& p, int out[3]) const;
};

}  // namespace ballshape

#endif  // BALLSHAPE_SPATIAL_GRID_HPP

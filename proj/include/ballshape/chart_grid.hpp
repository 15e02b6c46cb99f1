#ifndef BALLSHAPE_CHART_GRID_HPP
#define BALLSHAPE_CHART_GRID_HPP

#include <array>
#include <functional>
#include <vector>

#include "ballshape/charts.hpp"
#include "ballshape/mesh.hpp"

namespace ballshape {

// Graph heights phi sampled on a regular (2m+1)^2 grid covering the square
// [-radius, radius]^2 in a chart frame. Derivative quantities use central
// differences, so residuals are reported on interior nodes only.
class ChartGrid {
 public:
  // Samples an analytic graph phi(u, v); used by oracles and tests.
  static ChartGrid from_function(const std::function<double(double, double)>& phi,
                                 double radius, int n);

  // Samples the mesh by casting rays along the frame normal from the frame
  // plane. Throws RayMiss when a grid node's ray misses the surface.
  static ChartGrid from_mesh(const TriangleMesh& mesh, const VertexFrame& frame,
                             double radius, int n);

  int n() const { return n_; }
  double spacing() const { return spacing_; }
  double phi(int i, int j) const { return phi_[idx(i, j)]; }

  Vec2 grad(int i, int j) const;        // central differences
  Mat2 hessian(int i, int j) const;
  Mat2 first_form(int i, int j) const;  // g = I + grad grad^T
  Mat2 second_form(int i, int j) const; // b = Hess/sqrt(1+|grad|^2)

 private:
  int n_ = 0;          // nodes per side
  double spacing_ = 0.0;
  std::vector<double> phi_;
  int idx(int i, int j) const { return j * n_ + i; }
};

// Christoffel symbols Gamma[k](i,j) at the interior nodes, from the first
// fundamental form only. Output indexed [j*n+i], entries only valid on
// nodes with margin >= 2 from the boundary; others are zero-filled.
std::vector<std::array<Mat2, 2>> christoffel(const ChartGrid& grid);

struct GaussCodazziResidual {
  double gauss = 0.0;    // max norm of LHS-RHS of the Gauss equation
  double codazzi = 0.0;  // max norm of LHS-RHS of the Codazzi-Mainardi eqs
};

GaussCodazziResidual gauss_codazzi_residual(const ChartGrid& grid);

}  // namespace ballshape

#endif  // BALLSHAPE_CHART_GRID_HPP

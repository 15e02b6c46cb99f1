#ifndef BALLSHAPE_SHAPES_HPP
#define BALLSHAPE_SHAPES_HPP

#include <variant>

#include "ballshape/mesh.hpp"

namespace ballshape {

struct Icosphere {
  double radius = 1.0;
  int subdiv = 3;
};

struct Torus {
  double major_radius = 2.0;  // center of tube to axis
  double minor_radius = 0.5;  // tube radius
  int nu = 64;                // samples around the axis
  int nv = 32;                // samples around the tube
};

struct Ellipsoid {
  double a = 1.0, b = 1.0, c = 1.0;
  int subdiv = 3;
};

// Radially displaced icosphere: r(p) = radius * (1 + amp * P_mode(cos theta))
// with P the Legendre polynomial and theta the polar angle.
struct PerturbedSphere {
  double radius = 1.0;
  double amp = 0.0;
  int mode = 2;
  int subdiv = 3;
};

using ShapeSpec = std::variant<Icosphere, Torus, Ellipsoid, PerturbedSphere>;

TriangleMesh generate(const ShapeSpec& spec);

double legendre(int n, double x);

}  // namespace ballshape

#endif  // BALLSHAPE_SHAPES_HPP

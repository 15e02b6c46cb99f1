#include "ballshape/shapes.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "ballshape/errors.hpp"

namespace ballshape {

namespace {

// Unit icosphere connectivity; vertices on the unit sphere.
void unit_icosphere(int subdiv, std::vector<Vec3>& vertices,
                    std::vector<Triangle>& triangles) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& p : v) p.normalize();
  std::vector<Triangle> f = {
      {{0, 11, 5}}, {{0, 5, 1}},  {{0, 1, 7}},   {{0, 7, 10}}, {{0, 10, 11}},
      {{1, 5, 9}},  {{5, 11, 4}}, {{11, 10, 2}}, {{10, 7, 6}}, {{7, 1, 8}},
      {{3, 9, 4}},  {{3, 4, 2}},  {{3, 2, 6}},   {{3, 6, 8}},  {{3, 8, 9}},
      {{4, 9, 5}},  {{2, 4, 11}}, {{6, 2, 10}},  {{8, 6, 7}},  {{9, 8, 1}}};

  for (int level = 0; level < subdiv; ++level) {
    std::map<std::pair<VertexId, VertexId>, VertexId> midpoint;
    auto mid = [&](VertexId a, VertexId b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const VertexId id = static_cast<VertexId>(v.size());
      v.push_back((v[a] + v[b]).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(f.size() * 4);
    for (const Triangle& t : f) {
      const VertexId ab = mid(t[0], t[1]);
      const VertexId bc = mid(t[1], t[2]);
      const VertexId ca = mid(t[2], t[0]);
      next.push_back({{t[0], ab, ca}});
      next.push_back({{t[1], bc, ab}});
      next.push_back({{t[2], ca, bc}});
      next.push_back({{ab, bc, ca}});
    }
    f = std::move(next);
  }
  vertices = std::move(v);
  triangles = std::move(f);
}

TriangleMesh make_icosphere(double radius, int subdiv) {
  if (!(radius > 0.0)) throw DomainError("icosphere needs radius > 0");
  if (subdiv < 0 || subdiv > 8) throw DomainError("icosphere subdiv in [0,8]");
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  unit_icosphere(subdiv, vertices, triangles);
  for (Vec3& p : vertices) p *= radius;
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_torus(const Torus& spec) {
  if (!(spec.major_radius > spec.minor_radius && spec.minor_radius > 0.0))
    throw DomainError("torus needs R > r > 0");
  if (spec.nu < 8 || spec.nv < 8) throw DomainError("torus needs nu, nv >= 8");
  const int nu = spec.nu, nv = spec.nv;
  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    const double u = 2.0 * M_PI * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double v = 2.0 * M_PI * j / nv;
      const double w = spec.major_radius + spec.minor_radius * std::cos(v);
      vertices.emplace_back(w * std::cos(u), w * std::sin(u),
                            spec.minor_radius * std::sin(v));
    }
  }
  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(nu) * nv * 2);
  auto id = [nv](int i, int j) {
    return static_cast<VertexId>(i * nv + j);
  };
  for (int i = 0; i < nu; ++i) {
    const int i1 = (i + 1) % nu;
    for (int j = 0; j < nv; ++j) {
      const int j1 = (j + 1) % nv;
      triangles.push_back({{id(i, j), id(i1, j), id(i1, j1)}});
      triangles.push_back({{id(i, j), id(i1, j1), id(i, j1)}});
    }
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_ellipsoid(const Ellipsoid& spec) {
  if (!(spec.a > 0.0 && spec.b > 0.0 && spec.c > 0.0))
    throw DomainError("ellipsoid needs positive semi-axes");
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  unit_icosphere(spec.subdiv, vertices, triangles);
  for (Vec3& p : vertices) {
    p.x() *= spec.a;
    p.y() *= spec.b;
    p.z() *= spec.c;
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_perturbed_sphere(const PerturbedSphere& spec) {
  if (!(spec.radius > 0.0)) throw DomainError("sphere needs radius > 0");
  if (spec.mode < 0) throw DomainError("mode must be nonnegative");
  if (!(std::abs(spec.amp) < 1.0)) throw DomainError("|amp| must be < 1");
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  unit_icosphere(spec.subdiv, vertices, triangles);
  for (Vec3& p : vertices) {
    const double bump = legendre(spec.mode, p.z());  // cos(theta) = z on S^2
    p *= spec.radius * (1.0 + spec.amp * bump);
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

}  // namespace

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double pm2 = 1.0, pm1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p = ((2.0 * k - 1.0) * x * pm1 - (k - 1.0) * pm2) / k;
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

TriangleMesh generate(const ShapeSpec& spec) {
  return std::visit(
      [](const auto& s) -> TriangleMesh {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Icosphere>)
          return make_icosphere(s.radius, s.subdiv);
        else if constexpr (std::is_same_v<T, Torus>)
          return make_torus(s);
        else if constexpr (std::is_same_v<T, Ellipsoid>)
          return make_ellipsoid(s);
        else
          return make_perturbed_sphere(s);
      },
      spec);
}

}  // namespace ballshape

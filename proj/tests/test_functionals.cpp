#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballshape/charts.hpp"
#include "ballshape/errors.hpp"
#include "ballshape/functionals.hpp"
#include "ballshape/mesh.hpp"
#include "ballshape/shapes.hpp"

using namespace ballshape;

namespace {
constexpr double kPi = 3.14159265358979323846;

struct FieldCase {
  TriangleMesh mesh;
  CurvatureField field;
};

FieldCase sphere4() {
  TriangleMesh m = generate(Icosphere{1.0, 4});
  CurvatureField f = curvature_field(m);
  return {std::move(m), std::move(f)};
}
}  // namespace

TEST_CASE("willmore of the unit sphere is 4 pi") {
  const FieldCase c = sphere4();
  CHECK(willmore(c.mesh, c.field) ==
        doctest::Approx(4.0 * kPi).epsilon(0.02));
}

TEST_CASE("willmore is scale invariant") {
  const TriangleMesh base = generate(PerturbedSphere{1.0, 0.1, 3, 3});
  const double w0 = willmore(base, curvature_field(base));
  for (double lambda : {0.5, 2.0, 10.0}) {
    std::vector<Vec3> scaled;
    for (const Vec3& p : base.vertices()) scaled.push_back(lambda * p);
    const TriangleMesh m = base.with_vertices(std::move(scaled));
    const double w = willmore(m, curvature_field(m));
    CHECK(std::abs(w - w0) <= 1e-6 * w0);
  }
}

TEST_CASE("willmore exceeds 4 pi away from the sphere") {
  for (const ShapeSpec spec :
       {ShapeSpec(Ellipsoid{1.5, 1.0, 0.8, 3}),
        ShapeSpec(PerturbedSphere{1.0, 0.15, 3, 3}),
        ShapeSpec(PerturbedSphere{1.0, 0.1, 4, 3})}) {
    const TriangleMesh m = generate(spec);
    CHECK(willmore(m, curvature_field(m)) > 4.0 * kPi);
  }
}

TEST_CASE("gauss integral sees the genus") {
  const FieldCase c = sphere4();
  CHECK(evaluate(c.mesh, c.field, FunctionalSpec::gauss_integral()) ==
        doctest::Approx(4.0 * kPi).epsilon(0.02));
  const TriangleMesh torus = generate(Torus{2.0, 0.5, 128, 64});
  const double g =
      evaluate(torus, curvature_field(torus), FunctionalSpec::gauss_integral());
  CHECK(std::abs(g) <= 0.3);
}

TEST_CASE("gauss term is topological across genus-0 shapes") {
  for (const ShapeSpec spec :
       {ShapeSpec(PerturbedSphere{1.0, 0.12, 3, 4}),
        ShapeSpec(Ellipsoid{1.3, 1.0, 0.9, 4})}) {
    const TriangleMesh m = generate(spec);
    const CurvatureField f = curvature_field(m);
    const double kG = -0.7;
    const double expected = kG * 4.0 * kPi;
    const double gauss_part = canham_helfrich(m, f, 2.0, 0.0, kG) -
                              canham_helfrich(m, f, 2.0, 0.0, 0.0);
    CHECK(gauss_part == doctest::Approx(expected).epsilon(0.02));
  }
}

TEST_CASE("canham-helfrich of the unit sphere matches the hand value") {
  const FieldCase c = sphere4();
  // (2/2) * int 4 dA + (-1) * 4 pi = 16 pi - 4 pi = 12 pi.
  CHECK(canham_helfrich(c.mesh, c.field, 2.0, 0.0, -1.0) ==
        doctest::Approx(12.0 * kPi).epsilon(0.02));
  // Vanishing integrand at H0 = 2.
  CHECK(canham_helfrich(c.mesh, c.field, 1.0, 2.0, 0.0) <= 0.05);
  CHECK_THROWS_AS(canham_helfrich(c.mesh, c.field, 0.0, 0.0, 0.0),
                  DomainError);
}

TEST_CASE("helfrich with H0 = 2 nearly vanishes on the unit sphere") {
  const FieldCase c = sphere4();
  CHECK(evaluate(c.mesh, c.field, FunctionalSpec::helfrich(2.0)) <= 0.05);
}

TEST_CASE("mean integral of the unit sphere is 8 pi") {
  const FieldCase c = sphere4();
  CHECK(evaluate(c.mesh, c.field, FunctionalSpec::mean_integral()) ==
        doctest::Approx(8.0 * kPi).epsilon(0.02));
}

TEST_CASE("vesicle energy: moment term and exact degeneration") {
  const FieldCase c = sphere4();
  const double moment =
      evaluate(c.mesh, c.field, FunctionalSpec::mean_integral());
  // Constructed M0: moment term vanishes.
  const double at_target =
      vesicle_energy(c.mesh, c.field, 2.0, 0.0, -1.0, 3.0, moment);
  const double ch = canham_helfrich(c.mesh, c.field, 2.0, 0.0, -1.0);
  CHECK(at_target == doctest::Approx(ch).epsilon(1e-12));
  // k_m = 0 reduces bit-for-bit.
  CHECK(vesicle_energy(c.mesh, c.field, 2.0, 0.0, -1.0, 0.0, 123.0) == ch);
  // M0 = 0: moment term is (8 pi)^2 within the quadrature error.
  const double with_moment =
      vesicle_energy(c.mesh, c.field, 2.0, 0.0, -1.0, 1.0, 0.0);
  CHECK(with_moment - ch ==
        doctest::Approx(64.0 * kPi * kPi).epsilon(0.04));
}

TEST_CASE("isoperimetric gate classifies the three regimes") {
  CHECK(isoperimetric_check(4.0 * kPi, 4.0 * kPi / 3.0) ==
        IsoperimetricStatus::OnlyBall);
  CHECK(isoperimetric_check(4.0 * kPi, 0.9 * 4.0 * kPi / 3.0) ==
        IsoperimetricStatus::Feasible);
  CHECK(isoperimetric_check(1.0, 1.0) == IsoperimetricStatus::Infeasible);
  CHECK_THROWS_AS(isoperimetric_check(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(isoperimetric_check(1.0, 0.0), DomainError);
}

TEST_CASE("diameter diagnostic: sphere value and scale invariance") {
  const FieldCase c = sphere4();
  const DiameterDiagnostic d = diameter_diagnostic(c.mesh, c.field);
  CHECK(d.diameter == doctest::Approx(2.0).epsilon(0.01));
  // ratio = diameter / sqrt(area * willmore) ~ 2/(4 pi) on the unit sphere.
  CHECK(d.ratio == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(0.02));

  std::vector<Vec3> scaled;
  for (const Vec3& p : c.mesh.vertices()) scaled.push_back(2.0 * p);
  const TriangleMesh big = c.mesh.with_vertices(std::move(scaled));
  const DiameterDiagnostic d2 = diameter_diagnostic(big, curvature_field(big));
  CHECK(d2.ratio == doctest::Approx(d.ratio).epsilon(1e-6));
}

TEST_CASE("diameter ratio grows with elongation") {
  double prev = 0.0;
  for (double a : {1.0, 1.4, 1.8, 2.2}) {
    const TriangleMesh m = generate(Ellipsoid{a, 1.0, 1.0, 3});
    const DiameterDiagnostic d = diameter_diagnostic(m, curvature_field(m));
    CHECK(d.ratio > prev);
    prev = d.ratio;
  }
}

TEST_CASE("generic expressions evaluate and obey linearity") {
  const TriangleMesh m = [&] {
    TriangleMesh base = generate(Icosphere{1.0, 3});
    std::vector<Vec3> moved;
    for (const Vec3& p : base.vertices())
      moved.push_back(p + Vec3(2.0, 0.5, -1.0));
    return base.with_vertices(std::move(moved));
  }();
  const CurvatureField f = curvature_field(m);

  const double p = evaluate(m, f, FunctionalSpec::generic("x1", "", ""));
  const double q = evaluate(m, f, FunctionalSpec::generic("n3", "", ""));
  const double combo = evaluate(
      m, f, FunctionalSpec::generic("+ * 2 x1 * 3 n3", "", ""));
  const double scale = 2.0 * std::abs(p) + 3.0 * std::abs(q);
  CHECK(std::abs(combo - (2.0 * p + 3.0 * q)) <= 1e-10 * scale);
}

TEST_CASE("generic divergence-theorem volume matches the exact volume") {
  const FieldCase c = sphere4();
  const double vol = evaluate(
      c.mesh, c.field,
      FunctionalSpec::generic(
          "* 0.33333333333333333 + + * x1 n1 * x2 n2 * x3 n3", "", ""));
  CHECK(vol == doctest::Approx(measures(c.mesh).volume).epsilon(0.01));
}

TEST_CASE("generic willmore via j1 matches the builtin") {
  const FieldCase c = sphere4();
  const double generic = evaluate(
      c.mesh, c.field, FunctionalSpec::generic("", "* 0.25 * t t", ""));
  CHECK(generic ==
        doctest::Approx(willmore(c.mesh, c.field)).epsilon(1e-12));
}

TEST_CASE("expression parser rejects malformed input") {
  CHECK_THROWS_AS(Expression::parse("+ t"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("bogus"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("+ t t t"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse(""), ExpressionError);
}

TEST_CASE("division by zero reports the vertex") {
  const TriangleMesh m = generate(Icosphere{1.0, 2});
  const CurvatureField f = curvature_field(m);
  CHECK_THROWS_AS(
      evaluate(m, f, FunctionalSpec::generic("/ 1 0", "", "")),
      ExpressionError);
}

TEST_CASE("min max abs and pow operate as expected") {
  const Expression e = Expression::parse("max abs t min x1 2");
  // vars: x = (3, 0, 0), n arbitrary, t = -5 -> max(|-5|, min(3, 2)) = 5.
  CHECK(e.eval(Vec3(3, 0, 0), Vec3::UnitZ(), -5.0, 0) == 5.0);
  const Expression pw = Expression::parse("pow t 3");
  CHECK(pw.eval(Vec3::Zero(), Vec3::UnitZ(), 2.0, 0) == 8.0);
}

TEST_CASE("area and volume kinds dispatch to the exact measures") {
  const FieldCase c = sphere4();
  const MeshMeasures m = measures(c.mesh);
  CHECK(evaluate(c.mesh, c.field, FunctionalSpec::area()) == m.area);
  CHECK(evaluate(c.mesh, c.field, FunctionalSpec::volume()) == m.volume);
}

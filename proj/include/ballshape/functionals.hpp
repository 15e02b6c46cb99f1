#ifndef BALLSHAPE_FUNCTIONALS_HPP
#define BALLSHAPE_FUNCTIONALS_HPP

#include <memory>
#include <string>
#include <vector>

#include "ballshape/charts.hpp"
#include "ballshape/mesh.hpp"

namespace ballshape {

// Arithmetic tree over the variables x1,x2,x3 (position), n1,n2,n3 (unit
// normal), t (the curvature slot: H for j1 expressions, K for j2), parsed
// from Polish-notation strings, e.g. "* 0.25 pow t 2".
// Operators: + - * / pow min max (binary), abs neg (unary).
class Expression {
 public:
  static Expression parse(const std::string& text);
  Expression() = default;

  // vertex id only decorates error messages
  double eval(const Vec3& x, const Vec3& n, double t, VertexId vertex) const;
  bool empty() const { return root_ == nullptr; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

enum class FunctionalKind {
  Area,
  Volume,
  Willmore,
  Helfrich,
  CanhamHelfrich,
  GaussIntegral,
  MeanIntegral,
  VesicleEnergy,
  Generic,
};

// Declarative description of one geometric energy. Parameters that a kind
// does not use are ignored.
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::Area;
  double k_b = 1.0;   // bending modulus (> 0 in the physical regime)
  double H0 = 0.0;    // spontaneous curvature
  double k_G = 0.0;   // Gaussian modulus (a warning is emitted when > 0)
  double k_m = 0.0;   // moment penalty weight
  double M0 = 0.0;    // target total mean curvature
  Expression j0, j1, j2;  // Generic integrands; j1 sees t=H, j2 sees t=K

  static FunctionalSpec area() { return {FunctionalKind::Area}; }
  static FunctionalSpec volume() { return {FunctionalKind::Volume}; }
  static FunctionalSpec willmore() { return {FunctionalKind::Willmore}; }
  static FunctionalSpec helfrich(double H0);
  static FunctionalSpec canham_helfrich(double k_b, double H0, double k_G);
  static FunctionalSpec gauss_integral() {
    return {FunctionalKind::GaussIntegral};
  }
  static FunctionalSpec mean_integral() {
    return {FunctionalKind::MeanIntegral};
  }
  static FunctionalSpec vesicle(double k_b, double H0, double k_G, double k_m,
                                double M0);
  static FunctionalSpec generic(const std::string& j0, const std::string& j1,
                                const std::string& j2);
};

enum class ConstraintRelation { Equal, LessEqual };

struct Constraint {
  FunctionalSpec functional;
  ConstraintRelation relation = ConstraintRelation::Equal;
  double target = 0.0;
  double tolerance = 1e-3;
};

struct ConstraintSpec {
  std::vector<Constraint> constraints;
};

// Vertex-lumped quadrature of the spec over the mesh; Area and Volume
// dispatch to the exact per-triangle measures.
double evaluate(const TriangleMesh& mesh, const CurvatureField& field,
                const FunctionalSpec& spec);

// Decomposition E = combine(S) with S_k = sum over vertices of the k-th
// contribution; lets the shape gradient update sums incrementally when a
// single vertex moves. Area and Volume have no decomposition (0 terms).
int integral_terms(const FunctionalSpec& spec);
void integral_contributions(const FunctionalSpec& spec, const Vec3& x,
                            const Vec3& n, double H, double K, double area,
                            VertexId v, double out[3]);
double integral_combine(const FunctionalSpec& spec, const double sums[3]);

double willmore(const TriangleMesh& mesh, const CurvatureField& field);
double canham_helfrich(const TriangleMesh& mesh, const CurvatureField& field,
                       double k_b, double H0, double k_G);
double vesicle_energy(const TriangleMesh& mesh, const CurvatureField& field,
                      double k_b, double H0, double k_G, double k_m,
                      double M0);

enum class IsoperimetricStatus { Feasible, OnlyBall, Infeasible };

// Sign of A0^3 - 36 pi V0^2 with 1e-10 relative tolerance.
IsoperimetricStatus isoperimetric_check(double A0, double V0);

struct DiameterDiagnostic {
  double diameter = 0.0;
  double ratio = 0.0;  // diameter / sqrt(area * willmore), dimensionless
};

DiameterDiagnostic diameter_diagnostic(const TriangleMesh& mesh,
                                       const CurvatureField& field);

}  // namespace ballshape

#endif  // BALLSHAPE_FUNCTIONALS_HPP

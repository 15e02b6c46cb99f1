#include "ballshape/functionals.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ballshape/errors.hpp"

namespace ballshape {

// ---------------------------------------------------------------------------
// Expression trees
// ---------------------------------------------------------------------------

namespace {
enum class Op {
  Const,
  Var,       // payload: 0..5 -> x1..n3, 6 -> t
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Min,
  Max,
  Abs,
};
}  // namespace

struct Expression::Node {
  Op op = Op::Const;
  double value = 0.0;
  int var = 0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

std::shared_ptr<const Expression::Node> parse_node(
    std::istringstream& in, const std::string& full) {
  std::string tok;
  if (!(in >> tok))
    throw ExpressionError("truncated expression: \"" + full + "\"");
  auto node = std::make_shared<Expression::Node>();
  auto binary = [&](Op op) {
    node->op = op;
    node->lhs = parse_node(in, full);
    node->rhs = parse_node(in, full);
  };
  if (tok == "+") binary(Op::Add);
  else if (tok == "-") binary(Op::Sub);
  else if (tok == "*") binary(Op::Mul);
  else if (tok == "/") binary(Op::Div);
  else if (tok == "pow") binary(Op::Pow);
  else if (tok == "min") binary(Op::Min);
  else if (tok == "max") binary(Op::Max);
  else if (tok == "abs") {
    node->op = Op::Abs;
    node->lhs = parse_node(in, full);
  } else if (tok == "x1" || tok == "x2" || tok == "x3") {
    node->op = Op::Var;
    node->var = tok[1] - '1';
  } else if (tok == "n1" || tok == "n2" || tok == "n3") {
    node->op = Op::Var;
    node->var = 3 + (tok[1] - '1');
  } else if (tok == "t") {
    node->op = Op::Var;
    node->var = 6;
  } else {
    try {
      std::size_t used = 0;
      node->value = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ExpressionError("unknown token '" + tok + "' in \"" + full + "\"");
    }
  }
  return node;
}

double eval_node(const Expression::Node& node, const double vars[7],
                 VertexId vertex) {
  auto check = [vertex](double x) {
    if (!std::isfinite(x))
      throw ExpressionError("non-finite value at vertex " +
                            std::to_string(vertex));
    return x;
  };
  switch (node.op) {
    case Op::Const: return node.value;
    case Op::Var: return vars[node.var];
    case Op::Abs: return std::abs(eval_node(*node.lhs, vars, vertex));
    default: break;
  }
  const double a = eval_node(*node.lhs, vars, vertex);
  const double b = eval_node(*node.rhs, vars, vertex);
  switch (node.op) {
    case Op::Add: return check(a + b);
    case Op::Sub: return check(a - b);
    case Op::Mul: return check(a * b);
    case Op::Div:
      if (b == 0.0)
        throw ExpressionError("division by zero at vertex " +
                              std::to_string(vertex));
      return check(a / b);
    case Op::Pow: return check(std::pow(a, b));
    case Op::Min: return std::min(a, b);
    case Op::Max: return std::max(a, b);
    default: return 0.0;
  }
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  std::istringstream in(text);
  e.root_ = parse_node(in, text);
  std::string extra;
  if (in >> extra)
    throw ExpressionError("trailing token '" + extra + "' in \"" + text +
                          "\"");
  return e;
}

double Expression::eval(const Vec3& x, const Vec3& n, double t,
                        VertexId vertex) const {
  if (!root_) return 0.0;
  const double vars[7] = {x.x(), x.y(), x.z(), n.x(), n.y(), n.z(), t};
  return eval_node(*root_, vars, vertex);
}

// ---------------------------------------------------------------------------
// FunctionalSpec constructors
// ---------------------------------------------------------------------------

FunctionalSpec FunctionalSpec::helfrich(double H0) {
  FunctionalSpec s{FunctionalKind::Helfrich};
  s.H0 = H0;
  return s;
}

FunctionalSpec FunctionalSpec::canham_helfrich(double k_b, double H0,
                                               double k_G) {
  FunctionalSpec s{FunctionalKind::CanhamHelfrich};
  s.k_b = k_b;
  s.H0 = H0;
  s.k_G = k_G;
  return s;
}

FunctionalSpec FunctionalSpec::vesicle(double k_b, double H0, double k_G,
                                       double k_m, double M0) {
  FunctionalSpec s{FunctionalKind::VesicleEnergy};
  s.k_b = k_b;
  s.H0 = H0;
  s.k_G = k_G;
  s.k_m = k_m;
  s.M0 = M0;
  return s;
}

FunctionalSpec FunctionalSpec::generic(const std::string& j0,
                                       const std::string& j1,
                                       const std::string& j2) {
  FunctionalSpec s{FunctionalKind::Generic};
  if (!j0.empty()) s.j0 = Expression::parse(j0);
  if (!j1.empty()) s.j1 = Expression::parse(j1);
  if (!j2.empty()) s.j2 = Expression::parse(j2);
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

int integral_terms(const FunctionalSpec& spec) {
  switch (spec.kind) {
    case FunctionalKind::Area:
    case FunctionalKind::Volume: return 0;  // exact triangle formulas
    case FunctionalKind::Willmore:
    case FunctionalKind::Helfrich:
    case FunctionalKind::GaussIntegral:
    case FunctionalKind::MeanIntegral:
    case FunctionalKind::Generic: return 1;
    case FunctionalKind::CanhamHelfrich: return 2;
    case FunctionalKind::VesicleEnergy: return 3;
  }
  return 0;
}

void integral_contributions(const FunctionalSpec& spec, const Vec3& x,
                            const Vec3& n, double H, double K, double area,
                            VertexId v, double out[3]) {
  switch (spec.kind) {
    case FunctionalKind::Area:
    case FunctionalKind::Volume: break;
    case FunctionalKind::Willmore: out[0] = H * H * area; break;
    case FunctionalKind::Helfrich:
      out[0] = (H - spec.H0) * (H - spec.H0) * area;
      break;
    case FunctionalKind::GaussIntegral: out[0] = K * area; break;
    case FunctionalKind::MeanIntegral: out[0] = H * area; break;
    case FunctionalKind::Generic:
      out[0] = (spec.j0.eval(x, n, 0.0, v) + spec.j1.eval(x, n, H, v) +
                spec.j2.eval(x, n, K, v)) *
               area;
      break;
    case FunctionalKind::CanhamHelfrich:
      out[0] = (H - spec.H0) * (H - spec.H0) * area;
      out[1] = K * area;
      break;
    case FunctionalKind::VesicleEnergy:
      out[0] = (H - spec.H0) * (H - spec.H0) * area;
      out[1] = K * area;
      out[2] = H * area;
      break;
  }
}

double integral_combine(const FunctionalSpec& spec, const double sums[3]) {
  switch (spec.kind) {
    case FunctionalKind::Area:
    case FunctionalKind::Volume: return 0.0;
    case FunctionalKind::Willmore: return 0.25 * sums[0];
    case FunctionalKind::Helfrich:
    case FunctionalKind::GaussIntegral:
    case FunctionalKind::MeanIntegral:
    case FunctionalKind::Generic: return sums[0];
    case FunctionalKind::CanhamHelfrich:
      return 0.5 * spec.k_b * sums[0] + spec.k_G * sums[1];
    case FunctionalKind::VesicleEnergy: {
      const double ch = 0.5 * spec.k_b * sums[0] + spec.k_G * sums[1];
      if (spec.k_m == 0.0) return ch;  // reduces exactly to Canham-Helfrich
      const double moment = sums[2] - spec.M0;
      return ch + spec.k_m * moment * moment;
    }
  }
  return 0.0;
}

namespace {

void warn_positive_gauss_modulus(const FunctionalSpec& spec) {
  const bool has_gauss_term = spec.kind == FunctionalKind::CanhamHelfrich ||
                              spec.kind == FunctionalKind::VesicleEnergy;
  if (has_gauss_term && spec.k_G > 0.0)
    std::fprintf(stderr,
                 "warning: k_G > 0 leaves the energy unbounded from below "
                 "over unconstrained topology; evaluating anyway\n");
}

double exact_area(const TriangleMesh& mesh) {
  std::vector<double> areas(mesh.triangle_count());
  for (int f = 0; f < mesh.triangle_count(); ++f)
    areas[f] = mesh.triangle_area(f);
  return pairwise_sum(areas);
}

double exact_volume(const TriangleMesh& mesh) {
  std::vector<double> vols(mesh.triangle_count());
  for (int f = 0; f < mesh.triangle_count(); ++f)
    vols[f] = mesh.triangle_centroid(f).dot(mesh.triangle_normal(f)) *
              mesh.triangle_area(f) / 3.0;
  return pairwise_sum(vols);
}

}  // namespace

double evaluate(const TriangleMesh& mesh, const CurvatureField& field,
                const FunctionalSpec& spec) {
  if (spec.kind == FunctionalKind::Area) return exact_area(mesh);
  if (spec.kind == FunctionalKind::Volume) return exact_volume(mesh);
  warn_positive_gauss_modulus(spec);

  const int m = integral_terms(spec);
  const int nv = mesh.vertex_count();
  if (field.vertex_count() != nv)
    throw DomainError("curvature field does not match the mesh");
  std::vector<std::vector<double>> terms(m, std::vector<double>(nv, 0.0));
  for (VertexId v = 0; v < nv; ++v) {
    double out[3] = {0.0, 0.0, 0.0};
    integral_contributions(spec, mesh.vertex(v), field.normal[v], field.H[v],
                           field.K[v], field.lumped_area[v], v, out);
    for (int k = 0; k < m; ++k) terms[k][v] = out[k];
  }
  double sums[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < m; ++k) sums[k] = pairwise_sum(terms[k]);
  return integral_combine(spec, sums);
}

double willmore(const TriangleMesh& mesh, const CurvatureField& field) {
  return evaluate(mesh, field, FunctionalSpec::willmore());
}

double canham_helfrich(const TriangleMesh& mesh, const CurvatureField& field,
                       double k_b, double H0, double k_G) {
  if (!(k_b > 0.0)) throw DomainError("canham_helfrich needs k_b > 0");
  return evaluate(mesh, field,
                  FunctionalSpec::canham_helfrich(k_b, H0, k_G));
}

double vesicle_energy(const TriangleMesh& mesh, const CurvatureField& field,
                      double k_b, double H0, double k_G, double k_m,
                      double M0) {
  if (!(k_b > 0.0)) throw DomainError("vesicle_energy needs k_b > 0");
  return evaluate(mesh, field,
                  FunctionalSpec::vesicle(k_b, H0, k_G, k_m, M0));
}

IsoperimetricStatus isoperimetric_check(double A0, double V0) {
  if (!(A0 > 0.0 && V0 > 0.0))
    throw DomainError("isoperimetric_check needs positive area and volume");
  const double lhs = A0 * A0 * A0;
  const double rhs = 36.0 * M_PI * V0 * V0;
  const double scale = std::max(lhs, rhs);
  if (std::abs(lhs - rhs) <= 1e-10 * scale) return IsoperimetricStatus::OnlyBall;
  return lhs > rhs ? IsoperimetricStatus::Feasible
                   : IsoperimetricStatus::Infeasible;
}

DiameterDiagnostic diameter_diagnostic(const TriangleMesh& mesh,
                                       const CurvatureField& field) {
  DiameterDiagnostic d;
  d.diameter = mesh.diameter();
  const double area = exact_area(mesh);
  const double w = willmore(mesh, field);
  d.ratio = d.diameter / std::sqrt(area * w);
  return d;
}

}  // namespace ballshape

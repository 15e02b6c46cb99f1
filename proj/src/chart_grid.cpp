#include "ballshape/chart_grid.hpp"

#include <cmath>
#include <limits>

#include "ballshape/errors.hpp"

namespace ballshape {

namespace {

// Intersection parameter s of the line p + s*d with a triangle; accepts both
// signs of s. Returns false when parallel or outside.
bool line_triangle(const Vec3& p, const Vec3& d, const Vec3& a, const Vec3& b,
                   const Vec3& c, double& s) {
  const Vec3 e1 = b - a, e2 = c - a;
  const Vec3 pvec = d.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < 1e-14 * e1.norm() * e2.norm()) return false;
  const double inv = 1.0 / det;
  const Vec3 tvec = p - a;
  const double u = tvec.dot(pvec) * inv;
  if (u < -1e-10 || u > 1.0 + 1e-10) return false;
  const Vec3 qvec = tvec.cross(e1);
  const double v = d.dot(qvec) * inv;
  if (v < -1e-10 || u + v > 1.0 + 1e-10) return false;
  s = e2.dot(qvec) * inv;
  return true;
}

}  // namespace

ChartGrid ChartGrid::from_function(
    const std::function<double(double, double)>& phi, double radius, int n) {
  if (n < 5) throw DomainError("chart grid needs n >= 5");
  ChartGrid g;
  g.n_ = n;
  g.spacing_ = 2.0 * radius / (n - 1);
  g.phi_.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double u = -radius + i * g.spacing_;
      const double v = -radius + j * g.spacing_;
      g.phi_[g.idx(i, j)] = phi(u, v);
    }
  return g;
}

ChartGrid ChartGrid::from_mesh(const TriangleMesh& mesh,
                               const VertexFrame& frame, double radius,
                               int n) {
  const Vec3 origin = mesh.vertex(frame.vertex_id);
  return from_function(
      [&](double u, double v) {
        const Vec3 p = origin + u * frame.t1 + v * frame.t2;
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int f = 0; f < mesh.triangle_count(); ++f) {
          double s;
          if (line_triangle(p, frame.normal,
                            mesh.vertex(mesh.triangle(f)[0]),
                            mesh.vertex(mesh.triangle(f)[1]),
                            mesh.vertex(mesh.triangle(f)[2]), s) &&
              std::abs(s) < std::abs(best)) {
            best = s;
            found = true;
          }
        }
        if (!found)
          throw RayMissError("normal ray misses the surface inside the chart");
        return best;
      },
      radius, n);
}

Vec2 ChartGrid::grad(int i, int j) const {
  const double h2 = 2.0 * spacing_;
  return Vec2((phi(i + 1, j) - phi(i - 1, j)) / h2,
              (phi(i, j + 1) - phi(i, j - 1)) / h2);
}

Mat2 ChartGrid::hessian(int i, int j) const {
  const double h = spacing_;
  Mat2 out;
  out(0, 0) = (phi(i + 1, j) - 2.0 * phi(i, j) + phi(i - 1, j)) / (h * h);
  out(1, 1) = (phi(i, j + 1) - 2.0 * phi(i, j) + phi(i, j - 1)) / (h * h);
  out(0, 1) = out(1, 0) = (phi(i + 1, j + 1) - phi(i + 1, j - 1) -
                           phi(i - 1, j + 1) + phi(i - 1, j - 1)) /
                          (4.0 * h * h);
  return out;
}

Mat2 ChartGrid::first_form(int i, int j) const {
  const Vec2 d = grad(i, j);
  return Mat2::Identity() + d * d.transpose();
}

Mat2 ChartGrid::second_form(int i, int j) const {
  const Vec2 d = grad(i, j);
  return hessian(i, j) / std::sqrt(1.0 + d.squaredNorm());
}

std::vector<std::array<Mat2, 2>> christoffel(const ChartGrid& grid) {
  const int n = grid.n();
  std::vector<std::array<Mat2, 2>> out(
      static_cast<std::size_t>(n) * n,
      {Mat2::Zero(), Mat2::Zero()});
  const double h2 = 2.0 * grid.spacing();
  for (int j = 2; j < n - 2; ++j)
    for (int i = 2; i < n - 2; ++i) {
      // dg[l] = derivative of the first form along coordinate l.
      const Mat2 dg0 =
          (grid.first_form(i + 1, j) - grid.first_form(i - 1, j)) / h2;
      const Mat2 dg1 =
          (grid.first_form(i, j + 1) - grid.first_form(i, j - 1)) / h2;
      const Mat2 dg[2] = {dg0, dg1};
      const Mat2 g_inv = grid.first_form(i, j).inverse();
      std::array<Mat2, 2> gamma = {Mat2::Zero(), Mat2::Zero()};
      for (int k = 0; k < 2; ++k)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            double sum = 0.0;
            for (int l = 0; l < 2; ++l)
              sum += g_inv(k, l) *
                     (dg[b](l, a) + dg[a](l, b) - dg[l](a, b));
            gamma[k](a, b) = 0.5 * sum;
          }
      out[static_cast<std::size_t>(j) * n + i] = gamma;
    }
  return out;
}

GaussCodazziResidual gauss_codazzi_residual(const ChartGrid& grid) {
  const int n = grid.n();
  if (n < 7)
    throw DomainError("gauss_codazzi_residual needs a grid of at least 7x7");
  const auto gamma = christoffel(grid);
  const double h2 = 2.0 * grid.spacing();
  auto gamma_at = [&](int i, int j) -> const std::array<Mat2, 2>& {
    return gamma[static_cast<std::size_t>(j) * n + i];
  };

  GaussCodazziResidual out;
  for (int j = 3; j < n - 3; ++j)
    for (int i = 3; i < n - 3; ++i) {
      const Mat2 g_inv = grid.first_form(i, j).inverse();
      const Mat2 b = grid.second_form(i, j);
      const auto& gm = gamma_at(i, j);
      // Derivatives of Gamma and b along the two coordinates.
      std::array<Mat2, 2> dgamma[2];  // dgamma[l][k]
      for (int k = 0; k < 2; ++k) {
        dgamma[0][k] = (gamma_at(i + 1, j)[k] - gamma_at(i - 1, j)[k]) / h2;
        dgamma[1][k] = (gamma_at(i, j + 1)[k] - gamma_at(i, j - 1)[k]) / h2;
      }
      const Mat2 db[2] = {
          (grid.second_form(i + 1, j) - grid.second_form(i - 1, j)) / h2,
          (grid.second_form(i, j + 1) - grid.second_form(i, j - 1)) / h2};

      // Gauss: d_l Gamma^k_ij - d_j Gamma^k_il
      //        + sum_m (Gamma^m_ij Gamma^k_ml - Gamma^m_il Gamma^k_mj)
      //        = sum_m g^km (b_ij b_ml - b_il b_mj)
      for (int k = 0; k < 2; ++k)
        for (int a = 0; a < 2; ++a)
          for (int jj = 0; jj < 2; ++jj)
            for (int l = 0; l < 2; ++l) {
              double lhs = dgamma[l][k](a, jj) - dgamma[jj][k](a, l);
              for (int m = 0; m < 2; ++m)
                lhs += gm[m](a, jj) * gm[k](m, l) - gm[m](a, l) * gm[k](m, jj);
              double rhs = 0.0;
              for (int m = 0; m < 2; ++m)
                rhs += g_inv(k, m) * (b(a, jj) * b(m, l) - b(a, l) * b(m, jj));
              out.gauss = std::max(out.gauss, std::abs(lhs - rhs));
            }

      // Codazzi-Mainardi: d_k b_ij - d_j b_ik
      //                   = sum_l (Gamma^l_ik b_lj - Gamma^l_ij b_lk)
      for (int a = 0; a < 2; ++a)
        for (int jj = 0; jj < 2; ++jj)
          for (int k = 0; k < 2; ++k) {
            double lhs = db[k](a, jj) - db[jj](a, k);
            double rhs = 0.0;
            for (int l = 0; l < 2; ++l)
              rhs += gm[l](a, k) * b(l, jj) - gm[l](a, jj) * b(l, k);
            out.codazzi = std::max(out.codazzi, std::abs(lhs - rhs));
          }
    }
  return out;
}

}  // namespace ballshape

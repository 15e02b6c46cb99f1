#include "ballshape/constants.hpp"

#include <cmath>
#include <functional>

#include "ballshape/errors.hpp"

namespace ballshape {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxBisectionIters = 200;

// Bisection for an increasing function on an open interval. Runs until the
// bracket stops shrinking in double precision (or the iteration cap), which
// leaves the value residual at the rounding floor of the function itself.
double invert_increasing(const std::function<double(double)>& fn,
                         double target, double lo, double hi) {
  for (int i = 0; i < kMaxBisectionIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double f_of_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi / 2.0))
    throw DomainError("f_of_alpha needs alpha in (0, pi/2)");
  return 2.0 * alpha / std::cos(alpha);
}

double f_inverse(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("f_inverse needs epsilon > 0");
  return invert_increasing([](double a) { return 2.0 * a / std::cos(a); },
                           epsilon, 1e-18, kPi / 2.0 - 1e-12);
}

double f_eta(double alpha, double epsilon, double eta) {
  if (!(alpha > 0.0 && alpha < kPi / 2.0))
    throw DomainError("f_eta needs alpha in (0, pi/2)");
  if (!(epsilon > 0.0)) throw DomainError("f_eta needs epsilon > 0");
  if (!(eta > 0.0)) throw DomainError("f_eta needs eta > 0");
  return (3.0 * alpha + 2.0 * std::sqrt(2.0 * epsilon * eta)) /
         std::cos(alpha);
}

double f_eta_inverse(double epsilon, double eta) {
  if (!(epsilon > 0.0)) throw DomainError("f_eta_inverse needs epsilon > 0");
  if (!(eta > 0.0 && eta < epsilon / 8.0))
    throw DomainError("f_eta_inverse needs eta in (0, epsilon/8)");
  const double shift = 2.0 * std::sqrt(2.0 * epsilon * eta);
  return invert_increasing(
      [shift](double a) { return (3.0 * a + shift) / std::cos(a); }, epsilon,
      1e-18, kPi / 2.0 - 1e-12);
}

double g_of_eta(double eta) {
  if (!(eta > 0.0 && eta < kPi / 8.0))
    throw DomainError("g_of_eta needs eta in (0, pi/8)");
  const double c = std::cos(4.0 * eta);
  return 32.0 * eta / (c * c);
}

double g_inverse(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("g_inverse needs epsilon > 0");
  return invert_increasing(
      [](double eta) {
        const double c = std::cos(4.0 * eta);
        return 32.0 * eta / (c * c);
      },
      epsilon, 1e-18, kPi / 8.0 - 1e-12);
}

RadiiTable radii_table(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("radii_table needs epsilon > 0");
  RadiiTable t;
  t.epsilon = epsilon;
  t.f_inv = f_inverse(epsilon);
  t.g_inv = g_inverse(epsilon);
  t.f_eta_inv = f_eta_inverse(epsilon, t.g_inv);
  t.chart_radius = 0.25 * t.f_eta_inv - t.g_inv;
  t.lipschitz_L = 1.0 / std::tan(t.f_inv);
  return t;
}

}  // namespace ballshape

#ifndef BALLSHAPE_CONSTANTS_HPP
#define BALLSHAPE_CONSTANTS_HPP

namespace ballshape {

// All radii derived from one epsilon. Invariants: f_inv < epsilon/2,
// g_inv < epsilon/32, g_inv < f_eta_inv/4, chart_radius > 0.
struct RadiiTable {
  double epsilon = 0.0;
  double f_inv = 0.0;        // alpha with 2*alpha/cos(alpha) = epsilon
  double g_inv = 0.0;        // eta with 32*eta/cos^2(4*eta) = epsilon
  double f_eta_inv = 0.0;    // alpha with f_eta(alpha) = epsilon, eta = g_inv
  double chart_radius = 0.0; // f_eta_inv/4 - g_inv
  double lipschitz_L = 0.0;  // 1/tan(f_inv)
};

// f(alpha) = 2*alpha/cos(alpha), increasing bijection (0,pi/2) -> (0,inf).
double f_of_alpha(double alpha);
double f_inverse(double epsilon);

// f_eta(alpha) = (3*alpha + 2*sqrt(2*epsilon*eta))/cos(alpha).
double f_eta(double alpha, double epsilon, double eta);
double f_eta_inverse(double epsilon, double eta);

// g(eta) = 32*eta/cos^2(4*eta), increasing bijection (0,pi/8) -> (0,inf).
double g_of_eta(double eta);
double g_inverse(double epsilon);

RadiiTable radii_table(double epsilon);

}  // namespace ballshape

#endif  // BALLSHAPE_CONSTANTS_HPP

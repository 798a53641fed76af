#pragma once

namespace rriqa {

// Modified Bessel function of the second kind K_nu(x) for real order and
// x > 0 (K_{-nu} = K_nu). Uses Temme's series for x <= 2 and Steed's
// continued fraction otherwise, followed by upward recurrence in the order.
// Returns +inf at x == 0; throws DomainError for x < 0 or NaN input.
double bessel_k(double nu, double x);

// log K_nu(x), finite wherever K_nu(x) over- or underflows a double.
double log_bessel_k(double nu, double x);

// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments and
// z < 1 (z == 1 when c - a - b > 0). Direct series for |z| <= 1/2, Pfaff's
// transformation for z < -1/2 and the z -> 1 - z connection formula near 1.
// Throws DomainError for c a non-positive integer or z outside the domain,
// NoConvergence when a series fails to settle.
double hypergeometric_2f1(double a, double b, double c, double z);

// log |Gamma(x)| and the sign of Gamma(x), without touching signgam.
struct SignedLogGamma {
  double log_abs = 0.0;
  int sign = 1;  // 0 at the poles (non-positive integers)
};
SignedLogGamma signed_lgamma(double x);

}  // namespace rriqa

#pragma once

#include <functional>

namespace rriqa {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval. The
// worst subinterval is bisected until error <= max(abs_tol, rel_tol |value|)
// or max_intervals is reached. f is never evaluated at the endpoints.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-12, int max_intervals = 4000);

}  // namespace rriqa

namespace rriqa {

// Integral of f over [0, inf). [0, scale] is mapped by x = scale t^power,
// which flattens integrable power-law singularities at the origin for
// power > 1; [scale, inf) is mapped by x = scale / u.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double scale, double power,
                                     double abs_tol = 1e-12, double rel_tol = 1e-12);

}  // namespace rriqa

#pragma once

#include <functional>

namespace indprior {

struct QuadResult {
  double value;
  double error;  // estimated absolute error
};

/// Adaptive Gauss-Kronrod 7-15 on a finite interval [a, b]. Subdivides the
/// worst interval until the summed error estimate drops below
/// abs_tol + rel_tol*|integral|. Throws std::runtime_error if max_intervals
/// is exhausted first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-10,
                     int max_intervals = 4000);

/// Tanh-sinh (double exponential) rule on (a, b). Nodes never touch the
/// endpoints and near-endpoint abscissae are computed from the endpoint
/// inward, so integrable endpoint singularities are handled. The error is the
/// difference between the last two refinement levels.
QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12, int max_level = 12);

}  // namespace indprior

#include "indprior/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace indprior {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kKronrodWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[8] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = kKronrodWeights[0] * f0;
  double g7 = kGaussWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fi = f(mid + dx) + f(mid - dx);
    k15 += kKronrodWeights[i] * fi;
    g7 += kGaussWeights[i] * fi;
  }
  k15 *= half;
  g7 *= half;
  const double diff = 200.0 * std::fabs(k15 - g7);
  return {a, b, k15, diff * std::sqrt(diff)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0};
    QuadResult r = integrate(f, b, a, abs_tol, rel_tol, max_intervals);
    return {-r.value, r.error};
  }
  std::priority_queue<Segment> queue;
  Segment whole = gk15(f, a, b);
  double total = whole.value;
  double total_err = whole.error;
  queue.push(whole);
  int used = 1;
  while (total_err > abs_tol + rel_tol * std::fabs(total)) {
    if (used >= max_intervals) {
      throw std::runtime_error("integrate: interval budget exhausted");
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++used;
  }
  return {total, total_err};
}

QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a,
                               double b, double tol, int max_level) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0};
    QuadResult r = integrate_tanh_sinh(f, b, a, tol, max_level);
    return {-r.value, r.error};
  }
  const double r = 0.5 * (b - a);
  const double t_max = 6.5;

  // Weighted integrand at parameter t; returns 0 once the abscissa has
  // underflowed onto an endpoint or the weight has vanished.
  auto eval = [&](double t) -> double {
    const double y = 0.5 * M_PI * std::sinh(t);
    const double ch = std::cosh(y);
    const double w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
    if (!(w > 0.0) || !std::isfinite(w)) return 0.0;
    double x;
    if (y >= 0.0) {
      x = b - 2.0 * r / (1.0 + std::exp(2.0 * y));
    } else {
      x = a + 2.0 * r / (1.0 + std::exp(-2.0 * y));
    }
    if (!(x > a && x < b)) return 0.0;
    const double fx = f(x);
    if (!std::isfinite(fx)) return 0.0;
    return fx * w * r;
  };

  double h = 1.0;
  // Level 0: nodes at integer t.
  double sum = eval(0.0);
  for (int j = 1; j * h <= t_max; ++j) {
    const double term = eval(j * h) + eval(-j * h);
    sum += term;
    if (term == 0.0 && j > 3) break;
  }
  double estimate = h * sum;
  double error = std::fabs(estimate);

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    // Add the new odd-multiple nodes.
    double odd_sum = 0.0;
    for (int j = 1; j * h <= t_max; j += 2) {
      const double term = eval(j * h) + eval(-j * h);
      odd_sum += term;
      if (term == 0.0 && j * h > 3.0) break;
    }
    sum += odd_sum;
    const double next = h * sum;
    error = std::fabs(next - estimate);
    estimate = next;
    if (level >= 3 && error <= tol * std::max(1.0, std::fabs(estimate))) break;
  }
  return {estimate, error};
}

}  // namespace indprior

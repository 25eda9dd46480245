#include "indprior/eta_moments.hpp"

#include <cmath>
#include <stdexcept>

#include "indprior/quadrature.hpp"
#include "indprior/special.hpp"

namespace indprior {

ValueWithError eta_moment(const BetaShape& shape, int k) {
  shape.validate();
  if (k != 1 && k != 2) {
    throw std::invalid_argument("eta_moment: only k = 1 and k = 2 are supported");
  }
  const double lb = log_beta(shape.alpha, shape.beta);
  const double a = shape.alpha;
  const double b = shape.beta;

  // Lower half: theta in (0, 1/2].
  auto lower = [&](double th) {
    const double l = std::log(th) - std::log1p(-th);
    const double w = std::exp((a - 1.0) * std::log(th) + (b - 1.0) * std::log1p(-th) - lb);
    return (k == 1 ? l : l * l) * w;
  };
  // Upper half reflected: theta = 1 - u, u in (0, 1/2]; logit(1-u) = -logit(u).
  auto upper = [&](double u) {
    const double l = -(std::log(u) - std::log1p(-u));
    const double w = std::exp((a - 1.0) * std::log1p(-u) + (b - 1.0) * std::log(u) - lb);
    return (k == 1 ? l : l * l) * w;
  };

  const QuadResult lo = integrate_tanh_sinh(lower, 0.0, 0.5, 1e-13, 14);
  const QuadResult hi = integrate_tanh_sinh(upper, 0.0, 0.5, 1e-13, 14);
  return {lo.value + hi.value, lo.error + hi.error};
}

EtaMoments eta_mean_var(const BetaShape& shape) {
  const ValueWithError m1 = eta_moment(shape, 1);
  const ValueWithError m2 = eta_moment(shape, 2);
  const double var = m2.value - m1.value * m1.value;
  if (!(var > 0.0)) {
    throw std::runtime_error("eta_mean_var: computed variance is not positive");
  }
  return {m1.value, var};
}

EtaMoments eta_mean_var_analytic(const BetaShape& shape) {
  shape.validate();
  return {digamma(shape.alpha) - digamma(shape.beta),
          trigamma(shape.alpha) + trigamma(shape.beta)};
}

}  // namespace indprior

#include "indprior/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "indprior/special.hpp"

namespace indprior {

void LogisticParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(mu)) {
    throw std::domain_error("LogisticParams: require finite mu and s > 0");
  }
}

void BetaShape::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::domain_error("BetaShape: shapes must be positive and finite");
  }
}

void NormalParams::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::domain_error("NormalParams: require finite mean and variance > 0");
  }
}

double NormalParams::sd() const { return std::sqrt(variance); }

double logistic_pdf(double x, const LogisticParams& params) {
  params.validate();
  if (!std::isfinite(x)) throw std::domain_error("logistic_pdf: non-finite x");
  // Symmetric form: exp(-|z|) never overflows.
  const double z = std::fabs(x - params.mu) / params.s;
  const double e = std::exp(-z);
  const double d = 1.0 + e;
  return e / (params.s * d * d);
}

double logistic_cdf(double x, const LogisticParams& params) {
  params.validate();
  if (!std::isfinite(x)) throw std::domain_error("logistic_cdf: non-finite x");
  return expit((x - params.mu) / params.s);
}

double logistic_quantile(double u, const LogisticParams& params) {
  params.validate();
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("logistic_quantile: probability must lie in (0,1)");
  }
  return params.mu + params.s * (std::log(u) - std::log1p(-u));
}

std::vector<double> logistic_sample(const LogisticParams& params, std::size_t n,
                                    RngStream& rng) {
  params.validate();
  std::vector<double> out(n);
  for (auto& v : out) v = logistic_quantile(rng.uniform01(), params);
  return out;
}

double half_logistic_pdf(double x, const LogisticParams& params) {
  params.validate();
  if (!std::isfinite(x)) throw std::domain_error("half_logistic_pdf: non-finite x");
  if (x < params.mu) return 0.0;
  return 2.0 * logistic_pdf(x, params);
}

std::vector<double> half_logistic_sample(const LogisticParams& params,
                                         std::size_t n, RngStream& rng) {
  params.validate();
  // |X - mu| + mu for X logistic is exactly half-logistic.
  std::vector<double> out(n);
  for (auto& v : out) {
    const double x = logistic_quantile(rng.uniform01(), params);
    v = params.mu + std::fabs(x - params.mu);
  }
  return out;
}

double gen_logistic4_pdf(double eta, const BetaShape& shape) {
  shape.validate();
  if (!std::isfinite(eta)) throw std::domain_error("gen_logistic4_pdf: non-finite eta");
  const double log_pdf = shape.alpha * eta -
                         (shape.alpha + shape.beta) * log1p_exp(eta) -
                         log_beta(shape.alpha, shape.beta);
  return std::exp(log_pdf);
}

double beta_pdf(double theta, const BetaShape& shape) {
  shape.validate();
  if (!std::isfinite(theta)) throw std::domain_error("beta_pdf: non-finite theta");
  if (theta < 0.0 || theta > 1.0) return 0.0;
  if (theta == 0.0) {
    if (shape.alpha < 1.0) return std::numeric_limits<double>::infinity();
    if (shape.alpha == 1.0) return std::exp(-log_beta(1.0, shape.beta));
    return 0.0;
  }
  if (theta == 1.0) {
    if (shape.beta < 1.0) return std::numeric_limits<double>::infinity();
    if (shape.beta == 1.0) return std::exp(-log_beta(shape.alpha, 1.0));
    return 0.0;
  }
  const double log_pdf = (shape.alpha - 1.0) * std::log(theta) +
                         (shape.beta - 1.0) * std::log1p(-theta) -
                         log_beta(shape.alpha, shape.beta);
  return std::exp(log_pdf);
}

double beta_draw(const BetaShape& shape, RngStream& rng) {
  shape.validate();
  const double g1 = rng.gamma(shape.alpha);
  const double g2 = rng.gamma(shape.beta);
  return g1 / (g1 + g2);
}

std::vector<double> beta_sample(const BetaShape& shape, std::size_t n,
                                RngStream& rng) {
  std::vector<double> out(n);
  for (auto& v : out) v = beta_draw(shape, rng);
  return out;
}

double normal_pdf(double x, const NormalParams& params) {
  return std::exp(normal_log_pdf(x, params));
}

double normal_log_pdf(double x, const NormalParams& params) {
  params.validate();
  if (!std::isfinite(x)) throw std::domain_error("normal_pdf: non-finite x");
  const double z = x - params.mean;
  return -0.5 * (std::log(2.0 * M_PI * params.variance) + z * z / params.variance);
}

double normal_draw(const NormalParams& params, RngStream& rng) {
  params.validate();
  return rng.normal(params.mean, params.sd());
}

std::vector<double> normal_sample(const NormalParams& params, std::size_t n,
                                  RngStream& rng) {
  params.validate();
  std::vector<double> out(n);
  for (auto& v : out) v = normal_draw(params, rng);
  return out;
}

}  // namespace indprior

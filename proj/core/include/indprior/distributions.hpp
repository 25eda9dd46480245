#pragma once

#include <cstddef>
#include <vector>

#include "indprior/rng.hpp"

namespace indprior {

struct LogisticParams {
  double mu = 0.0;
  double s = 1.0;
  void validate() const;
};

struct BetaShape {
  double alpha = 1.0;
  double beta = 1.0;
  void validate() const;
};

struct NormalParams {
  double mean = 0.0;
  double variance = 1.0;
  void validate() const;
  double sd() const;
};

// Logistic(mu, s): mean mu, variance s^2 pi^2 / 3.
double logistic_pdf(double x, const LogisticParams& params);
double logistic_cdf(double x, const LogisticParams& params);
double logistic_quantile(double u, const LogisticParams& params);
std::vector<double> logistic_sample(const LogisticParams& params, std::size_t n,
                                    RngStream& rng);

/// Logistic density restricted to x >= mu and doubled; zero below mu.
double half_logistic_pdf(double x, const LogisticParams& params);
std::vector<double> half_logistic_sample(const LogisticParams& params,
                                         std::size_t n, RngStream& rng);

/// Density of logit(theta) when theta ~ Beta(alpha, beta) (Type IV
/// generalized logistic). Evaluated in log space.
double gen_logistic4_pdf(double eta, const BetaShape& shape);

double beta_pdf(double theta, const BetaShape& shape);
double beta_draw(const BetaShape& shape, RngStream& rng);
std::vector<double> beta_sample(const BetaShape& shape, std::size_t n,
                                RngStream& rng);

double normal_pdf(double x, const NormalParams& params);
double normal_log_pdf(double x, const NormalParams& params);
double normal_draw(const NormalParams& params, RngStream& rng);
std::vector<double> normal_sample(const NormalParams& params, std::size_t n,
                                  RngStream& rng);

}  // namespace indprior

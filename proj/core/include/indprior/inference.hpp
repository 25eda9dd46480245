#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indprior/prior_builder.hpp"

namespace indprior {

/// Covariate matrix (row-major, n x p), binary responses, and optionally the
/// generating truth.
struct Dataset {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> X;  // n * p, row-major; may be empty when p = 0
  std::vector<int> y;     // entries in {0,1}
  bool standardized = false;
  std::optional<std::vector<double>> truth;  // length p+1 when present
  std::uint64_t seed = 0;

  double x(std::size_t i, std::size_t j) const { return X[i * p + j]; }
  void validate() const;
  /// Linear predictor beta0 + sum_j x_ij beta_{j+1}.
  double eta(std::size_t i, std::span<const double> beta) const;
};

struct StandardizeResult {
  std::vector<double> X;      // standardized copy
  std::vector<double> means;  // per column
  std::vector<double> sds;    // per column, n-1 denominator
};

/// Centers and scales each column to mean 0, sd 1 (n-1 denominator). Throws
/// std::invalid_argument naming the first constant column.
StandardizeResult standardize(const std::vector<double>& X_raw, std::size_t n,
                              std::size_t p);

struct MleResult {
  std::vector<double> beta;
  bool converged = false;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Newton/IRLS maximum likelihood. Stops when the gradient max-norm drops
/// below 1e-8 or after 50 iterations; any |beta| > 30 flags separation-style
/// divergence (estimate still returned, converged = false).
MleResult logistic_mle(const Dataset& data);

/// Bernoulli log-likelihood plus Normal log-prior, with the stable
/// log1p(exp) form.
double log_posterior(std::span<const double> beta, const Dataset& data,
                     const PriorSpec& prior);

struct McmcSettings {
  int chains = 4;
  int iterations = 5000;
  int burnin = 2000;
};

struct Chains {
  std::size_t n_chains = 0;
  std::size_t iterations = 0;
  std::size_t burnin = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::vector<double> draws;       // chain-major: [chain][iteration][coef]
  std::vector<double> acceptance;  // post-burn-in rate per chain

  double at(std::size_t chain, std::size_t iter, std::size_t coef) const {
    return draws[(chain * iterations + iter) * dim + coef];
  }
  std::size_t post_burnin() const { return iterations - burnin; }
};

/// Adaptive random-walk Metropolis, one independent stream per chain derived
/// from (seed, chain index). Diagonal proposal; the global scale follows a
/// Robbins-Monro recursion toward 30% acceptance and the per-coordinate
/// scales are refreshed from the recent chain history, both frozen at the end
/// of burn-in. Initial states are drawn from the prior.
Chains mh_sample(const Dataset& data, const PriorSpec& prior,
                 const McmcSettings& settings, std::uint64_t seed);

struct CoefficientSummary {
  double mean;
  double ci_low;   // 2.5%
  double ci_high;  // 97.5%
  double map;      // midpoint of the tallest Freedman-Diaconis histogram bin
  double rhat;     // split-chain potential scale reduction
};

struct PosteriorSummary {
  std::vector<CoefficientSummary> coefficients;
};

/// Requires at least 1000 post-burn-in draws per chain.
PosteriorSummary summarize(const Chains& chains);

}  // namespace indprior

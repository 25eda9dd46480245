#pragma once

#include <optional>
#include <string>
#include <vector>

#include "indprior/distributions.hpp"

namespace indprior {

enum class PriorKind { vague, logistic, beta_matched, weighted };

const char* to_string(PriorKind kind);
PriorKind prior_kind_from_string(const std::string& name);

/// Independent Normal priors for (beta_0, ..., beta_p), index 0 = intercept,
/// plus the construction metadata.
struct PriorSpec {
  int p = 0;
  PriorKind kind = PriorKind::vague;
  std::vector<NormalParams> coeff_priors;  // length p + 1
  std::optional<double> k;                 // weighted kind only
  std::optional<BetaShape> target;

  void validate() const;
  int dim() const { return p + 1; }
};

/// Beta shapes matching a requested mean and coefficient of variation.
/// Requires (mean*cv)^2 < mean(1-mean); the error message states the largest
/// feasible cv for the given mean.
BetaShape beta_shapes_from_mean_cv(double mean, double cv);

/// All p+1 coefficients ~ Normal(0, pi^2 / (3(p+1))), matching the
/// Logistic(0,1) mean and variance of the linear predictor.
PriorSpec logistic_matched_priors(int p);

/// Intercept ~ Normal(mu_eta, var_eta/(p+1)), slopes ~ Normal(0,
/// var_eta/(p+1)), with (mu_eta, var_eta) from the analytic digamma route.
PriorSpec beta_matched_priors(int p, const BetaShape& target);

/// Intercept ~ Normal(mu_eta, k*var_eta), slopes ~ Normal(0,
/// (1-k)*var_eta/p). Requires p >= 1 and 0 < k < 1.
PriorSpec weighted_priors(int p, const BetaShape& target, double k);

/// All coefficients ~ Normal(0, sd^2).
PriorSpec vague_priors(int p, double sd = 1000.0);

std::string prior_spec_to_json(const PriorSpec& spec);
PriorSpec prior_spec_from_json(const std::string& json_text);

}  // namespace indprior

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indprior/induced.hpp"
#include "indprior/inference.hpp"
#include "indprior/sim_harness.hpp"

namespace indprior {

/// Single-season occupancy data: latent presence Z ~ Bernoulli(psi) per site,
/// detections Y|Z ~ Bernoulli(p Z) per visit.
struct OccupancyData {
  std::size_t sites = 0;
  std::size_t visits = 0;
  std::size_t q = 0;               // occupancy covariates
  std::size_t r = 0;               // detection covariates
  std::vector<double> W;           // sites x q, standardized
  std::vector<double> V;           // (sites*visits) x r, standardized
  std::vector<int> y;              // sites x visits
  std::optional<std::vector<int>> z_true;

  double w(std::size_t i, std::size_t j) const { return W[i * q + j]; }
  double v(std::size_t i, std::size_t t, std::size_t j) const {
    return V[(i * visits + t) * r + j];
  }
  int obs(std::size_t i, std::size_t t) const { return y[i * visits + t]; }
  bool detected(std::size_t i) const;
  void validate() const;
};

/// Simulates presence and detection from logistic models on standardized
/// Gamma covariates.
OccupancyData simulate_occupancy(std::span<const double> psi_betas,
                                 std::span<const double> det_betas,
                                 const std::vector<GammaSpec>& occ_covariates,
                                 const std::vector<GammaSpec>& det_covariates,
                                 std::size_t sites, std::size_t visits,
                                 std::uint64_t seed);

/// P(Z=1 | no detections) = psi Prod(1-p_t) / (psi Prod(1-p_t) + 1 - psi).
double conditional_presence_prob(double psi, std::span<const double> det_probs);

struct OccupancyFitOptions {
  McmcSettings mcmc;
  /// When set, the detection coefficients are held at these values and only
  /// z and the occupancy block are updated.
  std::optional<std::vector<double>> fixed_det_betas;
};

struct OccupancyFit {
  Chains psi_chains;
  Chains det_chains;
  PosteriorSummary psi_summary;
  PosteriorSummary det_summary;
};

/// Gibbs-within-Metropolis with the latent z updated explicitly from its
/// conditional, and each coefficient block updated by adaptive random-walk
/// Metropolis.
OccupancyFit fit_occupancy(const OccupancyData& data, const PriorSpec& psi_prior,
                           const PriorSpec& det_prior,
                           const OccupancyFitOptions& options,
                           std::uint64_t seed);

struct InducedOccupancyPriors {
  std::vector<double> psi_draws;
  std::vector<double> det_draws;
  Histogram psi_histogram;  // over [0,1]
  Histogram det_histogram;  // over [0,1]
};

/// Pushforward of psi and p at the given covariate rows under coefficient
/// draws from the priors. Each draw pairs fresh coefficients with a row
/// sampled uniformly from the provided rows; empty row sets mean "intercept
/// only" (all covariates zero).
InducedOccupancyPriors induced_occupancy_priors(
    const PriorSpec& psi_prior, const PriorSpec& det_prior,
    const std::vector<std::vector<double>>& occ_rows,
    const std::vector<std::vector<double>>& det_rows, std::size_t n_draws,
    std::uint64_t seed);

/// CSV bundle: a sites file (site, z if known, w1..wq) and a detections file
/// (site, visit, y, v1..vr). The provenance line, when nonempty, heads both.
struct OccupancyCsv {
  std::string sites;
  std::string detections;
};
OccupancyCsv occupancy_to_csv(const OccupancyData& data,
                              const std::string& provenance);
OccupancyData occupancy_from_csv(const std::string& sites_text,
                                 const std::string& detections_text);

}  // namespace indprior

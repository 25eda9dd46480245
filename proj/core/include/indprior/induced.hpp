#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "indprior/rng.hpp"

namespace indprior {

/// A univariate density together with its declared support.
struct DensityFn {
  std::function<double(double)> pdf;
  double support_lo;
  double support_hi;
};

/// Density induced on theta = expit(beta) by a prior density on beta:
///   pi_theta(theta) = pi_beta(logit(theta)) / (theta (1 - theta)).
double induce_theta_density(const DensityFn& beta_prior, double theta);

/// Density induced on beta = logit(theta) by a prior density on theta:
///   pi_beta(beta) = pi_theta(expit(beta)) * expit(beta) * expit(-beta).
/// For a Uniform(0,1) target this is the Logistic(0,1) density.
double induce_beta_density(const DensityFn& theta_prior, double beta);

struct Histogram {
  std::vector<double> centers;
  std::vector<double> density;  // normalized over the covered range
  double lo = 0.0;
  double hi = 0.0;
};

/// Histogram over [lo, hi] with the given bin count, normalized so the
/// density integrates to 1 over the covered range (draws outside are
/// dropped).
Histogram make_histogram(std::span<const double> draws, double lo, double hi,
                         std::size_t bins);

/// Histogram over the empirical [0.1%, 99.9%] quantile range of the draws.
Histogram make_histogram(std::span<const double> draws, std::size_t bins = 512);

struct ParamSampler {
  std::string name;
  std::function<double(RngStream&)> draw;
};

/// Monte Carlo pushforward: named parameter samplers feed a scalar transform,
/// producing an empirical sample plus a normalized histogram.
struct PushforwardSpec {
  std::vector<ParamSampler> samplers;
  std::function<double(std::span<const double>)> transform;
  std::size_t n_samples = 0;
  std::size_t grid_bins = 512;
  double max_nonfinite_fraction = 0.0;
};

struct PushforwardResult {
  std::vector<double> draws;
  Histogram histogram;
  std::size_t n_nonfinite = 0;
};

/// Draw i uses the substream (seed, i), so results are identical however the
/// draws are scheduled.
PushforwardResult pushforward_sample(const PushforwardSpec& spec,
                                     std::uint64_t seed);

}  // namespace indprior

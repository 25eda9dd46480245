#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "indprior/inference.hpp"

namespace testutil {

inline double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

inline double skewness(std::span<const double> v) {
  const double m = mean(v);
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m3 /= static_cast<double>(v.size());
  return m3 / std::pow(m2, 1.5);
}

/// Kolmogorov-Smirnov sup distance between a sample and a reference cdf.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

/// Brute-force log posterior: log of the product of Bernoulli pmfs times
/// Normal prior densities, computed term by term without the pooled
/// likelihood shortcut. Independent oracle for log_posterior.
inline double brute_force_log_posterior(std::span<const double> beta,
                                        const indprior::Dataset& data,
                                        const indprior::PriorSpec& prior) {
  double lp = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    double eta = beta[0];
    for (std::size_t j = 0; j < data.p; ++j) eta += data.x(i, j) * beta[j + 1];
    const double theta = 1.0 / (1.0 + std::exp(-eta));
    lp += std::log(data.y[i] == 1 ? theta : 1.0 - theta);
  }
  for (std::size_t j = 0; j <= data.p; ++j) {
    const auto& c = prior.coeff_priors[j];
    lp += std::log(1.0 / std::sqrt(2.0 * M_PI * c.variance) *
                   std::exp(-0.5 * (beta[j] - c.mean) * (beta[j] - c.mean) /
                            c.variance));
  }
  return lp;
}

struct GridPosterior {
  double mean0;
  double mean1;
};

/// Dense-grid quadrature posterior for an n x 1 logistic regression: 201x201
/// grid over the prior-mean +/- 6 prior-sd box, clipped to the region where
/// the posterior is non-negligible (found by a coarse pre-pass) so the grid
/// still resolves the posterior under very diffuse priors.
inline GridPosterior grid_posterior_means(const indprior::Dataset& data,
                                          const indprior::PriorSpec& prior) {
  auto box = [&](std::size_t j) {
    const auto& c = prior.coeff_priors[j];
    return std::pair<double, double>{c.mean - 6.0 * std::sqrt(c.variance),
                                     c.mean + 6.0 * std::sqrt(c.variance)};
  };
  auto [lo0, hi0] = box(0);
  auto [lo1, hi1] = box(1);

  auto lp = [&](double b0, double b1) {
    const double beta[2] = {b0, b1};
    return indprior::log_posterior(std::span<const double>(beta, 2), data, prior);
  };

  // Coarse pass: locate the high-density region inside the prior box.
  const int coarse = 401;
  double best = -1e300, best0 = 0.0, best1 = 0.0;
  for (int i = 0; i < coarse; ++i) {
    const double b0 = lo0 + (hi0 - lo0) * i / (coarse - 1.0);
    for (int j = 0; j < coarse; ++j) {
      const double b1 = lo1 + (hi1 - lo1) * j / (coarse - 1.0);
      const double v = lp(b0, b1);
      if (v > best) {
        best = v;
        best0 = b0;
        best1 = b1;
      }
    }
  }
  // Numeric curvature at the peak for a clip radius.
  auto curvature = [&](int axis) {
    const double h = 1e-3;
    const double c = lp(best0, best1);
    const double p = axis == 0 ? lp(best0 + h, best1) : lp(best0, best1 + h);
    const double m = axis == 0 ? lp(best0 - h, best1) : lp(best0, best1 - h);
    const double second = (p + m - 2.0 * c) / (h * h);
    return second < 0.0 ? std::sqrt(-1.0 / second) : 1e300;
  };
  const double sd0 = curvature(0), sd1 = curvature(1);
  lo0 = std::max(lo0, best0 - 10.0 * sd0);
  hi0 = std::min(hi0, best0 + 10.0 * sd0);
  lo1 = std::max(lo1, best1 - 10.0 * sd1);
  hi1 = std::min(hi1, best1 + 10.0 * sd1);

  const int n = 201;
  double total = 0.0, acc0 = 0.0, acc1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double b0 = lo0 + (hi0 - lo0) * i / (n - 1.0);
    for (int j = 0; j < n; ++j) {
      const double b1 = lo1 + (hi1 - lo1) * j / (n - 1.0);
      const double w = std::exp(lp(b0, b1) - best);
      total += w;
      acc0 += w * b0;
      acc1 += w * b1;
    }
  }
  return {acc0 / total, acc1 / total};
}

}  // namespace testutil

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "indprior/distributions.hpp"
#include "indprior/rng.hpp"

namespace indprior {

/// Logistic MGF exp(mu t) Gamma(1-st) Gamma(1+st) / Gamma(2), defined for
/// |t| < 1/s. Evaluated through log-gamma.
double logistic_mgf(double t, const LogisticParams& params);

/// Modulus of the logistic characteristic function, pi s t / sinh(pi s t),
/// with the t -> 0 limit of 1. For mu = 0 the CF is real and equals this.
double logistic_cf_modulus(double t, const LogisticParams& params);

/// (p+1)-th root of the Logistic(0,1) MGF / CF. The root distribution is the
/// law whose p+1 iid copies sum to Logistic(0,1).
double root_mgf(double t, int p);
double root_cf(double t, int p);

/// Grid-tabulated pdf/cdf, the carrier for CF-inversion output.
struct TabulatedDistribution {
  std::vector<double> grid;  // ascending, symmetric about 0 for root case
  std::vector<double> pdf;
  std::vector<double> cdf;   // nondecreasing, renormalized to end at 1

  double variance() const;
};

struct CfGridSpec {
  double half_width;                // output grid covers [-half_width, half_width]
  std::size_t grid_points = 2001;   // odd, so 0 is a node
  std::size_t quad_points = 8192;   // Simpson panels for the cosine integral
};

/// Inverts a real, even, absolutely integrable characteristic function:
///   pdf(x) = (1/pi) * Int_0^T cf(t) cos(tx) dt,
/// T chosen where cf drops below 1e-12. Requires cf(0) = 1 (to 1e-9); pdf
/// values below -1e-8 abort with the worst offender, smaller ringing is
/// clipped to zero. Total mass must land within 1e-4 of 1 before the cdf is
/// renormalized.
TabulatedDistribution invert_symmetric_cf(const std::function<double(double)>& cf,
                                          const CfGridSpec& spec);

/// Tabulation of the (p+1)-th root of the Logistic(0,1) CF on a grid of
/// +/- 12 standard deviations.
TabulatedDistribution root_logistic_table(int p);

/// Inverse-cdf draw from a tabulated distribution at probability u.
double tabulated_quantile(const TabulatedDistribution& table, double u);

/// n inverse-cdf samples from the root-logistic distribution of order p.
std::vector<double> sample_root_logistic(int p, std::size_t n, RngStream& rng);

/// One-sided Laplace transform of the doubled logistic density,
/// 2 * Int_0^inf exp(-t x) LogisticPdf(x; mu, s) dx, t > 0. For mu = 0 this
/// is the Laplace transform of the Half-Logistic(0, s) distribution.
double half_logistic_laplace(double t, const LogisticParams& params);

/// Reflects each half-logistic sample about mu with probability 1/2, turning
/// Half-Logistic(mu, s) input into Logistic(mu, s) output. All inputs must be
/// >= mu.
std::vector<double> half_to_full_logistic(const std::vector<double>& samples,
                                          const LogisticParams& params,
                                          RngStream& rng);

/// Central finite difference of the logistic MGF at t = 0; approximates the
/// mean. Requires 0 < delta < 1/(2s).
double mgf_derivative_numeric(const LogisticParams& params, double delta);

}  // namespace indprior

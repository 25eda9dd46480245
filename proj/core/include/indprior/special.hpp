#pragma once

namespace indprior {

/// ln(theta/(1-theta)); accurate near both endpoints. Throws std::domain_error
/// unless 0 < theta < 1.
double logit(double theta);

/// Inverse logit, 1/(1+exp(-x)), evaluated on the non-overflowing branch.
double expit(double x);

/// log1p(exp(x)) without overflow for large |x|.
double log1p_exp(double x);

/// ln B(a,b) via log-gamma. Requires a > 0, b > 0.
double log_beta(double a, double b);

/// Digamma psi(x) for x > 0: upward recurrence to x >= 10, then the
/// asymptotic Bernoulli series. Relative error below 1e-12.
double digamma(double x);

/// Trigamma psi'(x) for x > 0, same scheme as digamma.
double trigamma(double x);

/// Standard normal quantile (Wichura's AS 241, double precision variant).
/// Requires 0 < p < 1.
double normal_quantile(double p);

/// Standard normal cdf via erfc.
double normal_cdf(double x);

}  // namespace indprior

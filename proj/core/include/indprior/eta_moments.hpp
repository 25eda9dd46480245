#pragma once

#include "indprior/distributions.hpp"

namespace indprior {

/// Mean and variance of eta = logit(theta) for theta ~ Beta(alpha, beta).
struct EtaMoments {
  double mu_eta;
  double var_eta;
};

struct ValueWithError {
  double value;
  double error;
};

/// E[eta^k], k in {1,2}, by tanh-sinh quadrature in theta-space over (0,1).
/// The integral is split at 1/2 and the upper half reflected so each piece
/// has its singular endpoint at zero, where abscissae stay accurate.
ValueWithError eta_moment(const BetaShape& shape, int k);

/// Quadrature route: mu from k=1, variance from k=2 minus mu^2.
EtaMoments eta_mean_var(const BetaShape& shape);

/// Analytic route (the oracle): E[logit theta] = psi(alpha) - psi(beta),
/// Var = psi'(alpha) + psi'(beta).
EtaMoments eta_mean_var_analytic(const BetaShape& shape);

}  // namespace indprior

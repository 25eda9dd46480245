#include "indprior/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "indprior/special.hpp"

namespace indprior {

void Dataset::validate() const {
  if (X.size() != n * p) throw std::invalid_argument("Dataset: X size mismatch");
  if (y.size() != n) throw std::invalid_argument("Dataset: y size mismatch");
  for (int v : y) {
    if (v != 0 && v != 1) throw std::invalid_argument("Dataset: y entries must be 0 or 1");
  }
  if (truth && truth->size() != p + 1) {
    throw std::invalid_argument("Dataset: truth must have length p+1");
  }
  if (standardized && n >= 2) {
    for (std::size_t j = 0; j < p; ++j) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
      mean /= static_cast<double>(n);
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      if (std::fabs(mean) > 1e-10 || std::fabs(sd - 1.0) > 1e-10) {
        throw std::invalid_argument(
            "Dataset: standardized flag set but column " + std::to_string(j) +
            " has mean " + std::to_string(mean) + ", sd " + std::to_string(sd));
      }
    }
  }
}

double Dataset::eta(std::size_t i, std::span<const double> beta) const {
  double v = beta[0];
  for (std::size_t j = 0; j < p; ++j) v += x(i, j) * beta[j + 1];
  return v;
}

StandardizeResult standardize(const std::vector<double>& X_raw, std::size_t n,
                              std::size_t p) {
  if (n < 2) throw std::invalid_argument("standardize: need n >= 2");
  if (X_raw.size() != n * p) throw std::invalid_argument("standardize: size mismatch");
  StandardizeResult out;
  out.X = X_raw;
  out.means.resize(p);
  out.sds.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += X_raw[i * p + j];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = X_raw[i * p + j] - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw std::invalid_argument("standardize: column " + std::to_string(j) +
                                  " is constant");
    }
    out.means[j] = mean;
    out.sds[j] = sd;
    for (std::size_t i = 0; i < n; ++i) {
      out.X[i * p + j] = (X_raw[i * p + j] - mean) / sd;
    }
  }
  return out;
}

namespace {

/// Solves the symmetric positive definite system A x = b in place via
/// Cholesky. Returns false if A is not (numerically) positive definite
/// relative to its largest diagonal entry.
bool cholesky_solve(std::vector<double>& A, std::vector<double>& b, std::size_t d) {
  double dmax = 0.0;
  for (std::size_t j = 0; j < d; ++j) dmax = std::max(dmax, A[j * d + j]);
  const double floor = std::max(1e-12 * dmax, 1e-300);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = A[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= A[j * d + k] * A[j * d + k];
    if (!(diag > floor)) return false;
    const double ljj = std::sqrt(diag);
    A[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = A[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= A[i * d + k] * A[j * d + k];
      A[i * d + j] = v / ljj;
    }
  }
  // Forward then back substitution.
  for (std::size_t i = 0; i < d; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= A[i * d + k] * b[k];
    b[i] = v / A[i * d + i];
  }
  for (std::size_t ii = d; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t k = ii + 1; k < d; ++k) v -= A[k * d + ii] * b[k];
    b[ii] = v / A[ii * d + ii];
  }
  return true;
}

}  // namespace

MleResult logistic_mle(const Dataset& data) {
  data.validate();
  const std::size_t d = data.p + 1;
  MleResult res;
  res.beta.assign(d, 0.0);

  std::vector<double> grad(d), hess(d * d);
  for (int iter = 0; iter < 50; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
      const double mu = expit(data.eta(i, res.beta));
      const double r = static_cast<double>(data.y[i]) - mu;
      const double w = mu * (1.0 - mu);
      // Design row is (1, x_i1, ..., x_ip).
      grad[0] += r;
      hess[0] += w;
      for (std::size_t j = 0; j < data.p; ++j) {
        const double xij = data.x(i, j);
        grad[j + 1] += r * xij;
        hess[(j + 1) * d] += w * xij;  // intercept column
        for (std::size_t k = 0; k <= j; ++k) {
          hess[(j + 1) * d + (k + 1)] += w * xij * data.x(i, k);
        }
      }
    }
    // Mirror the lower triangle.
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) hess[a * d + b] = hess[b * d + a];
    }
    res.grad_norm = 0.0;
    for (double g : grad) res.grad_norm = std::max(res.grad_norm, std::fabs(g));
    res.iterations = iter;
    if (res.grad_norm < 1e-8) {
      res.converged = true;
      return res;
    }
    std::vector<double> step = grad;
    std::vector<double> h = hess;
    if (!cholesky_solve(h, step, d)) {
      if (iter == 0) {
        throw std::invalid_argument("logistic_mle: design matrix is rank deficient");
      }
      res.converged = false;  // weights collapsed, separation-style failure
      return res;
    }
    for (std::size_t j = 0; j < d; ++j) res.beta[j] += step[j];
    for (double b : res.beta) {
      if (std::fabs(b) > 30.0) {
        res.converged = false;
        return res;
      }
    }
  }
  res.converged = false;
  return res;
}

double log_posterior(std::span<const double> beta, const Dataset& data,
                     const PriorSpec& prior) {
  prior.validate();
  if (beta.size() != static_cast<std::size_t>(prior.dim()) ||
      prior.p != static_cast<int>(data.p)) {
    throw std::invalid_argument("log_posterior: dimension mismatch");
  }
  double ll = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double eta = data.eta(i, beta);
    ll += static_cast<double>(data.y[i]) * eta - log1p_exp(eta);
  }
  for (std::size_t j = 0; j < beta.size(); ++j) {
    ll += normal_log_pdf(beta[j], prior.coeff_priors[j]);
  }
  return ll;
}

Chains mh_sample(const Dataset& data, const PriorSpec& prior,
                 const McmcSettings& settings, std::uint64_t seed) {
  data.validate();
  prior.validate();
  if (prior.p != static_cast<int>(data.p)) {
    throw std::invalid_argument("mh_sample: prior and data dimension mismatch");
  }
  if (settings.chains < 1) throw std::invalid_argument("mh_sample: chains must be >= 1");
  if (settings.burnin < 0 || settings.iterations <= settings.burnin) {
    throw std::invalid_argument("mh_sample: need iterations > burnin >= 0");
  }
  const std::size_t d = static_cast<std::size_t>(prior.dim());
  const auto iters = static_cast<std::size_t>(settings.iterations);
  const auto burnin = static_cast<std::size_t>(settings.burnin);

  Chains chains;
  chains.n_chains = static_cast<std::size_t>(settings.chains);
  chains.iterations = iters;
  chains.burnin = burnin;
  chains.dim = d;
  chains.seed = seed;
  chains.draws.resize(chains.n_chains * iters * d);
  chains.acceptance.assign(chains.n_chains, 0.0);

  RngStream root(seed);
  for (std::size_t c = 0; c < chains.n_chains; ++c) {
    RngStream rng = root.substream(c);

    std::vector<double> beta(d), proposal(d), scale(d);
    for (std::size_t j = 0; j < d; ++j) {
      beta[j] = normal_draw(prior.coeff_priors[j], rng);
      scale[j] = prior.coeff_priors[j].sd();
    }
    double log_s = std::log(2.38 / std::sqrt(static_cast<double>(d)));
    double cur_lp = log_posterior(beta, data, prior);

    std::size_t accepted_post = 0;
    const std::size_t window = 250;
    std::vector<double> history;
    history.reserve(window * d);

    for (std::size_t t = 0; t < iters; ++t) {
      const double s = std::exp(log_s);
      for (std::size_t j = 0; j < d; ++j) {
        proposal[j] = beta[j] + s * scale[j] * rng.normal();
      }
      const double prop_lp = log_posterior(proposal, data, prior);
      const double alpha = std::min(1.0, std::exp(prop_lp - cur_lp));
      if (rng.uniform01() < alpha) {
        beta = proposal;
        cur_lp = prop_lp;
        if (t >= burnin) ++accepted_post;
      }
      double* slot = &chains.draws[(c * iters + t) * d];
      std::copy(beta.begin(), beta.end(), slot);

      if (t < burnin) {
        // Robbins-Monro on the global log-scale toward 30% acceptance.
        const double gamma =
            std::min(0.25, 4.0 / std::sqrt(static_cast<double>(t) + 10.0));
        log_s += gamma * (alpha - 0.3);
        history.insert(history.end(), beta.begin(), beta.end());
        if (history.size() >= window * d) {
          // Refresh the per-coordinate scales from the recent history.
          const std::size_t rows = history.size() / d;
          for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t r = 0; r < rows; ++r) mean += history[r * d + j];
            mean /= static_cast<double>(rows);
            double ss = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
              const double dv = history[r * d + j] - mean;
              ss += dv * dv;
            }
            const double sd = std::sqrt(ss / static_cast<double>(rows - 1));
            if (sd > 0.0) scale[j] = sd;
          }
          history.clear();
        }
      }
    }
    chains.acceptance[c] = static_cast<double>(accepted_post) /
                           static_cast<double>(iters - burnin);
  }
  return chains;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * sorted[i] + w * sorted[i + 1];
}

double histogram_mode(const std::vector<double>& sorted) {
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;
  if (!(iqr > 0.0)) return quantile_sorted(sorted, 0.5);
  const double width =
      2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  const double lo = sorted.front();
  const double hi = sorted.back();
  auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  bins = std::clamp<std::size_t>(bins, 1, 100000);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : sorted) {
    auto idx = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  return lo + (static_cast<double>(best) + 0.5) * (hi - lo) / static_cast<double>(bins);
}

double split_rhat(const Chains& chains, std::size_t coef) {
  const std::size_t half = chains.post_burnin() / 2;
  if (half < 2) return 1.0;
  const std::size_t m = 2 * chains.n_chains;
  std::vector<double> means(m, 0.0), vars(m, 0.0);
  for (std::size_t c = 0; c < chains.n_chains; ++c) {
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t j = 2 * c + s;
      const std::size_t start = chains.burnin + s * half;
      double mean = 0.0;
      for (std::size_t t = 0; t < half; ++t) mean += chains.at(c, start + t, coef);
      mean /= static_cast<double>(half);
      double ss = 0.0;
      for (std::size_t t = 0; t < half; ++t) {
        const double dv = chains.at(c, start + t, coef) - mean;
        ss += dv * dv;
      }
      means[j] = mean;
      vars[j] = ss / static_cast<double>(half - 1);
    }
  }
  const double w = std::accumulate(vars.begin(), vars.end(), 0.0) / static_cast<double>(m);
  double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(m);
  double b_over_n = 0.0;
  for (double mu : means) b_over_n += (mu - grand) * (mu - grand);
  b_over_n /= static_cast<double>(m - 1);
  if (!(w > 0.0)) return 1.0;
  const double n = static_cast<double>(half);
  const double var_plus = (n - 1.0) / n * w + b_over_n;
  // Floored at 1; with no between-chain spread the raw ratio is (n-1)/n.
  return std::max(1.0, std::sqrt(var_plus / w));
}

}  // namespace

PosteriorSummary summarize(const Chains& chains) {
  if (chains.post_burnin() < 1000) {
    throw std::invalid_argument("summarize: need at least 1000 post-burn-in draws per chain");
  }
  PosteriorSummary out;
  out.coefficients.resize(chains.dim);
  const std::size_t total = chains.n_chains * chains.post_burnin();
  std::vector<double> pooled(total);
  for (std::size_t k = 0; k < chains.dim; ++k) {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < chains.n_chains; ++c) {
      for (std::size_t t = chains.burnin; t < chains.iterations; ++t) {
        pooled[idx++] = chains.at(c, t, k);
      }
    }
    std::sort(pooled.begin(), pooled.end());
    CoefficientSummary& s = out.coefficients[k];
    s.mean = std::accumulate(pooled.begin(), pooled.end(), 0.0) /
             static_cast<double>(total);
    s.ci_low = quantile_sorted(pooled, 0.025);
    s.ci_high = quantile_sorted(pooled, 0.975);
    s.map = histogram_mode(pooled);
    s.rhat = split_rhat(chains, k);
  }
  return out;
}

}  // namespace indprior

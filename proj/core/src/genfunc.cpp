#include "indprior/genfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "indprior/quadrature.hpp"

namespace indprior {

double logistic_mgf(double t, const LogisticParams& params) {
  params.validate();
  const double st = params.s * t;
  if (!(std::fabs(st) < 1.0)) {
    throw std::domain_error("logistic_mgf: defined only for |t| < 1/s");
  }
  // Gamma(2) = 1.
  return std::exp(params.mu * t + std::lgamma(1.0 - st) + std::lgamma(1.0 + st));
}

double logistic_cf_modulus(double t, const LogisticParams& params) {
  params.validate();
  if (!std::isfinite(t)) throw std::domain_error("logistic_cf_modulus: non-finite t");
  const double x = M_PI * params.s * t;
  if (std::fabs(x) < 1e-8) return 1.0 - x * x / 6.0;
  const double sh = std::sinh(x);
  if (std::isinf(sh)) return 0.0;
  return x / sh;
}

double root_mgf(double t, int p) {
  if (p < 0) throw std::domain_error("root_mgf: p must be >= 0");
  if (!(std::fabs(t) < 1.0)) {
    throw std::domain_error("root_mgf: defined only for |t| < 1");
  }
  return std::exp((std::lgamma(1.0 - t) + std::lgamma(1.0 + t)) / (p + 1));
}

double root_cf(double t, int p) {
  if (p < 0) throw std::domain_error("root_cf: p must be >= 0");
  if (!std::isfinite(t)) throw std::domain_error("root_cf: non-finite t");
  // log(x / sinh x) stays representable long after x/sinh(x) underflows,
  // which matters because the (p+1)-th root decays (p+1) times slower.
  const double x = M_PI * std::fabs(t);
  if (x < 1e-8) return 1.0;
  const double log_sinh = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
  return std::exp((std::log(x) - log_sinh) / (p + 1));
}

double TabulatedDistribution::variance() const {
  // Trapezoid moments of the tabulated pdf.
  double mass = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = grid[i] - grid[i - 1];
    mass += 0.5 * h * (pdf[i] + pdf[i - 1]);
    m1 += 0.5 * h * (pdf[i] * grid[i] + pdf[i - 1] * grid[i - 1]);
    m2 += 0.5 * h * (pdf[i] * grid[i] * grid[i] + pdf[i - 1] * grid[i - 1] * grid[i - 1]);
  }
  const double mean = m1 / mass;
  return m2 / mass - mean * mean;
}

TabulatedDistribution invert_symmetric_cf(const std::function<double(double)>& cf,
                                          const CfGridSpec& spec) {
  if (spec.grid_points < 3 || spec.grid_points % 2 == 0) {
    throw std::invalid_argument("invert_symmetric_cf: grid_points must be odd and >= 3");
  }
  if (spec.quad_points < 8 || spec.quad_points % 2 != 0) {
    throw std::invalid_argument("invert_symmetric_cf: quad_points must be even and >= 8");
  }
  if (std::fabs(cf(0.0) - 1.0) > 1e-9) {
    throw std::invalid_argument("invert_symmetric_cf: cf(0) must equal 1");
  }

  // Truncation point: double until the CF has decayed below 1e-12.
  double T = 1.0;
  while (cf(T) > 1e-12) {
    T *= 2.0;
    if (T > 1e6) {
      throw std::runtime_error("invert_symmetric_cf: cf does not decay");
    }
  }

  // Pre-evaluate the CF at Simpson nodes on [0, T]. The node count must keep
  // several panels per oscillation of cos(t x) at the widest grid point.
  std::size_t nq = spec.quad_points;
  const auto needed =
      static_cast<std::size_t>(5.0 * T * spec.half_width / M_PI);
  if (needed > nq) nq = needed + (needed % 2);
  const double dt = T / static_cast<double>(nq);
  std::vector<double> cft(nq + 1), tw(nq + 1);
  for (std::size_t j = 0; j <= nq; ++j) {
    const double tj = static_cast<double>(j) * dt;
    cft[j] = cf(tj);
    double w = (j == 0 || j == nq) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    tw[j] = w * dt / 3.0;
  }

  TabulatedDistribution out;
  const std::size_t n = spec.grid_points;
  out.grid.resize(n);
  out.pdf.resize(n);
  const std::size_t mid = n / 2;
  const double dx = spec.half_width / static_cast<double>(mid);
  double worst = 0.0;
  double worst_x = 0.0;
  for (std::size_t i = mid; i < n; ++i) {
    const double x = static_cast<double>(i - mid) * dx;
    double acc = 0.0;
    for (std::size_t j = 0; j <= nq; ++j) {
      acc += tw[j] * cft[j] * std::cos(static_cast<double>(j) * dt * x);
    }
    double val = acc / M_PI;
    if (val < worst) {
      worst = val;
      worst_x = x;
    }
    out.grid[i] = x;
    out.pdf[i] = val;
    out.grid[n - 1 - i] = -x;
    out.pdf[n - 1 - i] = val;  // even CF -> even pdf
  }
  if (worst < -1e-8) {
    std::ostringstream os;
    os << "invert_symmetric_cf: inversion failure, pdf = " << worst << " at x = "
       << worst_x;
    throw std::runtime_error(os.str());
  }
  for (auto& v : out.pdf) v = std::max(v, 0.0);

  // Cumulative trapezoid, then renormalize.
  out.cdf.resize(n);
  out.cdf[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    out.cdf[i] = out.cdf[i - 1] +
                 0.5 * (out.grid[i] - out.grid[i - 1]) * (out.pdf[i] + out.pdf[i - 1]);
  }
  const double mass = out.cdf[n - 1];
  if (std::fabs(mass - 1.0) > 1e-4) {
    std::ostringstream os;
    os << "invert_symmetric_cf: tabulated mass " << mass << " deviates from 1";
    throw std::runtime_error(os.str());
  }
  for (auto& v : out.cdf) v /= mass;
  return out;
}

TabulatedDistribution root_logistic_table(int p) {
  if (p < 0) throw std::domain_error("root_logistic_table: p must be >= 0");
  // The root density keeps the logistic's exp(-|x|) tail rate for every p,
  // so the grid needs a fixed margin on top of the sd-scaled width or the
  // mass check fails once p is large enough to shrink 12 sd below the tail.
  const double sd = std::sqrt(M_PI * M_PI / 3.0 / (p + 1));
  CfGridSpec spec{12.0 * sd + 14.0};
  return invert_symmetric_cf([p](double t) { return root_cf(t, p); }, spec);
}

double tabulated_quantile(const TabulatedDistribution& table, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("tabulated_quantile: probability must lie in (0,1)");
  }
  const auto& cdf = table.cdf;
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.begin()) return table.grid.front();
  if (it == cdf.end()) return table.grid.back();
  const auto i = static_cast<std::size_t>(it - cdf.begin());
  const double c0 = cdf[i - 1], c1 = cdf[i];
  const double g0 = table.grid[i - 1], g1 = table.grid[i];
  if (c1 <= c0) return g1;
  return g0 + (g1 - g0) * (u - c0) / (c1 - c0);
}

std::vector<double> sample_root_logistic(int p, std::size_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_root_logistic: n must be >= 1");
  const TabulatedDistribution table = root_logistic_table(p);
  std::vector<double> out(n);
  for (auto& v : out) v = tabulated_quantile(table, rng.uniform01());
  return out;
}

double half_logistic_laplace(double t, const LogisticParams& params) {
  params.validate();
  if (!(t > 0.0)) {
    throw std::domain_error("half_logistic_laplace: t must be positive (the "
                            "transform diverges for t <= 0)");
  }
  // Upper cutoff where the logistic tail is below 1e-17 relative mass.
  const double upper = std::max(0.0, params.mu) + 42.0 * params.s;
  const QuadResult q = integrate(
      [&](double x) { return std::exp(-t * x) * logistic_pdf(x, params); }, 0.0,
      upper, 1e-10, 1e-10);
  return 2.0 * q.value;
}

std::vector<double> half_to_full_logistic(const std::vector<double>& samples,
                                          const LogisticParams& params,
                                          RngStream& rng) {
  params.validate();
  std::vector<double> out;
  out.reserve(samples.size());
  for (double x : samples) {
    if (x < params.mu) {
      throw std::domain_error(
          "half_to_full_logistic: sample below mu violates the half-logistic "
          "support");
    }
    out.push_back(rng.bernoulli(0.5) ? 2.0 * params.mu - x : x);
  }
  return out;
}

double mgf_derivative_numeric(const LogisticParams& params, double delta) {
  params.validate();
  if (!(delta > 0.0 && delta < 1.0 / (2.0 * params.s))) {
    throw std::domain_error("mgf_derivative_numeric: need 0 < delta < 1/(2s)");
  }
  return (logistic_mgf(delta, params) - logistic_mgf(-delta, params)) /
         (2.0 * delta);
}

}  // namespace indprior

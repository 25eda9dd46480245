#include "indprior/induced.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "indprior/special.hpp"

namespace indprior {

double induce_theta_density(const DensityFn& beta_prior, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::domain_error("induce_theta_density: theta must lie in (0,1)");
  }
  const double eta = logit(theta);
  return beta_prior.pdf(eta) / (theta * (1.0 - theta));
}

double induce_beta_density(const DensityFn& theta_prior, double beta) {
  if (!std::isfinite(beta)) {
    throw std::domain_error("induce_beta_density: non-finite beta");
  }
  const double theta = expit(beta);
  const double jacobian = expit(beta) * expit(-beta);
  return theta_prior.pdf(theta) * jacobian;
}

Histogram make_histogram(std::span<const double> draws, double lo, double hi,
                         std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("make_histogram: bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("make_histogram: need hi > lo");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  std::size_t inside = 0;
  for (double v : draws) {
    if (v < lo || v > hi) continue;
    auto idx = static_cast<std::size_t>((v - lo) / width);
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
    ++inside;
  }
  h.centers.resize(bins);
  h.density.resize(bins);
  const double norm = inside > 0 ? static_cast<double>(inside) * width : 1.0;
  for (std::size_t i = 0; i < bins; ++i) {
    h.centers[i] = lo + (static_cast<double>(i) + 0.5) * width;
    h.density[i] = static_cast<double>(counts[i]) / norm;
  }
  return h;
}

Histogram make_histogram(std::span<const double> draws, std::size_t bins) {
  if (draws.empty()) throw std::invalid_argument("make_histogram: no draws");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * sorted[i] + w * sorted[i + 1];
  };
  double lo = quantile(0.001);
  double hi = quantile(0.999);
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return make_histogram(draws, lo, hi, bins);
}

PushforwardResult pushforward_sample(const PushforwardSpec& spec,
                                     std::uint64_t seed) {
  if (spec.n_samples < 1) {
    throw std::invalid_argument("pushforward_sample: sample count must be >= 1");
  }
  if (spec.samplers.empty()) {
    throw std::invalid_argument("pushforward_sample: no parameter samplers");
  }
  RngStream root(seed);
  PushforwardResult result;
  result.draws.reserve(spec.n_samples);
  std::vector<double> params(spec.samplers.size());
  std::string first_offender;
  for (std::size_t i = 0; i < spec.n_samples; ++i) {
    RngStream rs = root.substream(i);
    for (std::size_t j = 0; j < spec.samplers.size(); ++j) {
      params[j] = spec.samplers[j].draw(rs);
    }
    const double v = spec.transform(params);
    if (!std::isfinite(v)) {
      ++result.n_nonfinite;
      if (first_offender.empty()) {
        std::ostringstream os;
        os << "draw " << i << " (";
        for (std::size_t j = 0; j < params.size(); ++j) {
          if (j) os << ", ";
          os << spec.samplers[j].name << "=" << params[j];
        }
        os << ")";
        first_offender = os.str();
      }
      continue;
    }
    result.draws.push_back(v);
  }
  const double frac = static_cast<double>(result.n_nonfinite) /
                      static_cast<double>(spec.n_samples);
  if (frac > spec.max_nonfinite_fraction) {
    throw std::runtime_error(
        "pushforward_sample: transform produced a non-finite value at " +
        first_offender);
  }
  result.histogram = make_histogram(result.draws, spec.grid_bins);
  return result;
}

}  // namespace indprior

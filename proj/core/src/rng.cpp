#include "indprior/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "indprior/special.hpp"

namespace indprior {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RngStream RngStream::substream(std::uint64_t id) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(id + 0x632BE59BD9B4E019ULL)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  // 53-bit mantissa, offset half a grid step so 0 and 1 are excluded.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::normal() { return normal_quantile(uniform01()); }

double RngStream::normal(double mean, double sd) { return mean + sd * normal(); }

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("RngStream::gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

bool RngStream::bernoulli(double prob) { return uniform01() < prob; }

}  // namespace indprior

#pragma once

#include <cstdint>
#include <random>

namespace indprior {

/// Seeded random stream with cheap derivation of independent substreams.
/// Substream derivation depends only on (seed, id), so parallel workers can
/// draw from disjoint streams whose output does not depend on scheduling.
/// All variate generation is implemented on top of the stream's own uniforms
/// (normal via inverse cdf, gamma via Marsaglia-Tsang), so sequences are
/// reproducible across platforms and standard-library versions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Stream derived from (this stream's seed, id). Independent of any draws
  /// already taken from this stream.
  RngStream substream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0,1).
  double uniform01();

  double uniform(double lo, double hi);

  /// Standard normal via the AS 241 quantile of uniform01().
  double normal();
  double normal(double mean, double sd);

  /// Gamma(shape) with unit rate, shape > 0.
  double gamma(double shape);

  bool bernoulli(double prob);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace indprior

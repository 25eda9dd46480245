#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "indprior/distributions.hpp"
#include "indprior/induced.hpp"
#include "indprior/prior_builder.hpp"
#include "indprior/quadrature.hpp"
#include "indprior/special.hpp"
#include "support/test_utils.hpp"

using namespace indprior;

namespace {

DensityFn logistic01_density() {
  return {[](double x) { return logistic_pdf(x, {0.0, 1.0}); }, -1e300, 1e300};
}

DensityFn normal_density(double mean, double variance) {
  return {[=](double x) { return normal_pdf(x, {mean, variance}); }, -1e300, 1e300};
}

DensityFn uniform01_density() {
  return {[](double t) { return (t > 0.0 && t < 1.0) ? 1.0 : 0.0; }, 0.0, 1.0};
}

}  // namespace

TEST_CASE("Logistic(0,1) coefficient prior induces Uniform(0,1) on theta") {
  const auto prior = logistic01_density();
  CHECK(induce_theta_density(prior, 0.37) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i <= 99; ++i) {
    CHECK(induce_theta_density(prior, i / 100.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(induce_theta_density(prior, 0.0), std::domain_error);
  CHECK_THROWS_AS(induce_theta_density(prior, 1.2), std::domain_error);
}

TEST_CASE("wide normal priors pile induced mass at the extremes") {
  const auto prior = normal_density(0.0, 9.0);
  CHECK(induce_theta_density(prior, 0.5) == doctest::Approx(0.53192).epsilon(1e-4));
  CHECK(induce_theta_density(prior, 0.01) > induce_theta_density(prior, 0.5));
  // Symmetric beta prior => induced density symmetric about 1/2.
  for (double t : {0.03, 0.2, 0.41}) {
    CHECK(induce_theta_density(prior, t) ==
          doctest::Approx(induce_theta_density(prior, 1.0 - t)).epsilon(1e-10));
  }
}

TEST_CASE("uniform target induces the Logistic(0,1) coefficient density") {
  const auto target = uniform01_density();
  CHECK(induce_beta_density(target, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(induce_beta_density(target, 2.3) ==
        doctest::Approx(induce_beta_density(target, -2.3)).epsilon(1e-14));
  for (double b : {-9.0, -1.0, 0.4, 6.0}) {
    CHECK(induce_beta_density(target, b) ==
          doctest::Approx(logistic_pdf(b, {0.0, 1.0})).epsilon(1e-12));
  }
}

TEST_CASE("beta target induces the generalized logistic density") {
  const BetaShape shape{2.633, 1.129};
  const DensityFn target{[&](double t) { return beta_pdf(t, shape); }, 0.0, 1.0};
  for (double eta : {-2.0, 0.0, 1.5}) {
    CHECK(induce_beta_density(target, eta) ==
          doctest::Approx(gen_logistic4_pdf(eta, shape)).epsilon(1e-12));
  }
}

TEST_CASE("induced beta density integrates to one") {
  // |beta| <= 36 keeps expit(beta) strictly inside (0,1) in double precision;
  // the remaining tail mass is far below the tolerance for these shapes.
  for (auto shape : {BetaShape{1.0, 1.0}, BetaShape{2.633, 1.129}, BetaShape{0.8, 0.8}}) {
    const DensityFn target{[=](double t) { return beta_pdf(t, shape); }, 0.0, 1.0};
    const auto q = integrate(
        [&](double b) { return induce_beta_density(target, b); }, -36.0, 36.0,
        1e-9, 1e-9);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("pushforward of logistic eta through expit is uniform") {
  PushforwardSpec spec;
  spec.samplers = {{"eta", [](RngStream& rs) {
                      return logistic_quantile(rs.uniform01(), {0.0, 1.0});
                    }}};
  spec.transform = [](std::span<const double> v) { return expit(v[0]); };
  spec.n_samples = 40000;
  const auto result = pushforward_sample(spec, 2024);
  const double d = testutil::ks_statistic(
      result.draws, [](double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); });
  CHECK(d < 1.63 / std::sqrt(40000.0));
}

TEST_CASE("pushforward mean under symmetric coefficient priors") {
  const double var = M_PI * M_PI / 6.0;
  PushforwardSpec spec;
  spec.samplers = {{"b0", [=](RngStream& rs) { return rs.normal(0.0, std::sqrt(var)); }},
                   {"b1", [=](RngStream& rs) { return rs.normal(0.0, std::sqrt(var)); }}};
  // x = 0, so only the intercept matters.
  spec.transform = [](std::span<const double> v) { return expit(v[0] + v[1] * 0.0); };
  spec.n_samples = 100000;
  const auto result = pushforward_sample(spec, 7);
  CHECK(testutil::mean(result.draws) == doctest::Approx(0.5).epsilon(0.01 / 0.5));
}

TEST_CASE("Ricker model A: induced carrying capacity is right skewed") {
  PushforwardSpec spec;
  spec.samplers = {{"a", [](RngStream& rs) { return std::fabs(rs.normal(0.0, 10.0)); }},
                   {"b", [](RngStream& rs) { return std::fabs(rs.normal(0.0, 10.0)); }}};
  spec.transform = [](std::span<const double> v) { return v[0] / v[1]; };
  spec.n_samples = 50000;
  const auto result = pushforward_sample(spec, 99);
  CHECK(testutil::skewness(result.draws) > 0.0);
}

TEST_CASE("pushforward of a point mass is a point") {
  PushforwardSpec spec;
  spec.samplers = {{"a", [](RngStream&) { return 3.0; }},
                   {"b", [](RngStream&) { return 4.0; }}};
  spec.transform = [](std::span<const double> v) { return v[0] + v[1]; };
  spec.n_samples = 100;
  const auto result = pushforward_sample(spec, 1);
  for (double v : result.draws) CHECK(v == 7.0);
}

TEST_CASE("non-finite transforms are reported with the offending draw") {
  PushforwardSpec spec;
  spec.samplers = {{"a", [](RngStream&) { return 0.0; }}};
  spec.transform = [](std::span<const double> v) { return 1.0 / v[0]; };
  spec.n_samples = 10;
  CHECK_THROWS_WITH_AS(pushforward_sample(spec, 3),
                       doctest::Contains("a=0"), std::runtime_error);
}

TEST_CASE("histogram density integrates to one over its range") {
  RngStream rng(5);
  std::vector<double> draws(20000);
  for (auto& v : draws) v = rng.normal();
  const auto h = make_histogram(draws, 128);
  double mass = 0.0;
  const double width = (h.hi - h.lo) / 128.0;
  for (double d : h.density) mass += d * width;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "indprior/eta_moments.hpp"
#include "indprior/induced.hpp"
#include "indprior/prior_builder.hpp"
#include "indprior/special.hpp"
#include "support/test_utils.hpp"

using namespace indprior;

TEST_CASE("beta shapes from mean and cv") {
  const auto s = beta_shapes_from_mean_cv(0.7, 0.3);
  CHECK(s.alpha == doctest::Approx(2.6333).epsilon(1e-3 / 2.63));
  CHECK(s.beta == doctest::Approx(1.1286).epsilon(1e-3 / 1.13));

  // Uniform: mean 1/2, variance 1/12 -> cv = sqrt(1/12)/0.5.
  const double cv_uniform = std::sqrt(1.0 / 12.0) / 0.5;
  const auto u = beta_shapes_from_mean_cv(0.5, cv_uniform);
  CHECK(u.alpha == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(u.beta == doctest::Approx(1.0).epsilon(1e-10));

  // Tiny cv: m(1-m)/v - 1 = 0.25/2.5e-5 - 1 = 9999, so both shapes are
  // 0.5 * 9999; symmetric as required and round-tripping the cv exactly.
  const auto tight = beta_shapes_from_mean_cv(0.5, 0.01);
  CHECK(tight.alpha == doctest::Approx(4999.5).epsilon(1e-10));
  CHECK(tight.beta == doctest::Approx(tight.alpha).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(beta_shapes_from_mean_cv(0.7, 0.7),
                       doctest::Contains("cv must be below"), std::domain_error);
}

TEST_CASE("mean/cv round trip on random feasible pairs") {
  RngStream rng(4242);
  for (int i = 0; i < 50; ++i) {
    const double mean = rng.uniform(0.05, 0.95);
    const double cv_max = std::sqrt((1.0 - mean) / mean);
    const double cv = rng.uniform(0.05, 0.95) * cv_max;
    const auto s = beta_shapes_from_mean_cv(mean, cv);
    const double back_mean = s.alpha / (s.alpha + s.beta);
    const double back_var = s.alpha * s.beta /
                            ((s.alpha + s.beta) * (s.alpha + s.beta) *
                             (s.alpha + s.beta + 1.0));
    CHECK(back_mean == doctest::Approx(mean).epsilon(1e-10));
    CHECK(std::sqrt(back_var) / back_mean == doctest::Approx(cv).epsilon(1e-10));
  }
}

TEST_CASE("logistic-matched prior variances") {
  const auto p0 = logistic_matched_priors(0);
  CHECK(p0.coeff_priors[0].variance == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-12));
  CHECK(std::sqrt(p0.coeff_priors[0].variance) == doctest::Approx(1.8138).epsilon(1e-4));

  const auto p1 = logistic_matched_priors(1);
  CHECK(std::sqrt(p1.coeff_priors[0].variance) == doctest::Approx(1.283).epsilon(1e-3));
  CHECK(p1.coeff_priors.size() == 2);

  const auto p3 = logistic_matched_priors(3);
  CHECK(std::sqrt(p3.coeff_priors[0].variance) == doctest::Approx(0.907).epsilon(1e-3));
  for (const auto& c : p3.coeff_priors) {
    CHECK(c.mean == 0.0);
    CHECK(c.variance == doctest::Approx(M_PI * M_PI / 12.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(logistic_matched_priors(-1), std::domain_error);
}

TEST_CASE("beta-matched priors") {
  const auto unit = beta_matched_priors(0, {1.0, 1.0});
  CHECK(unit.coeff_priors[0].mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(unit.coeff_priors[0].variance == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-10));

  const auto m = beta_matched_priors(3, {2.633, 1.129});
  CHECK(m.coeff_priors[0].mean == doctest::Approx(1.150).epsilon(0.002));
  CHECK(m.coeff_priors[0].variance == doctest::Approx(1.843 / 4.0).epsilon(0.002));
  CHECK(m.coeff_priors[1].mean == 0.0);
  CHECK(m.coeff_priors[1].variance == doctest::Approx(0.4608).epsilon(0.002));

  for (int p : {1, 2, 3, 10}) {
    const auto spec = beta_matched_priors(p, {2.633, 1.129});
    double total = 0.0;
    for (const auto& c : spec.coeff_priors) total += c.variance;
    const double var_eta = eta_mean_var_analytic({2.633, 1.129}).var_eta;
    CHECK(total == doctest::Approx(var_eta).epsilon(1e-10));
  }
}

TEST_CASE("weighted priors") {
  const auto w = weighted_priors(3, {2.633, 1.129}, 0.4);
  CHECK(w.coeff_priors[0].mean == doctest::Approx(1.150).epsilon(0.002));
  CHECK(w.coeff_priors[0].variance == doctest::Approx(0.7372).epsilon(1e-3 / 0.7372));
  CHECK(w.coeff_priors[1].variance == doctest::Approx(0.3686).epsilon(1e-3 / 0.3686));

  // Variance identity k*v + p*(1-k)*v/p = v.
  const double v = eta_mean_var_analytic({2.633, 1.129}).var_eta;
  double total = 0.0;
  for (const auto& c : w.coeff_priors) total += c.variance;
  CHECK(total == doctest::Approx(v).epsilon(1e-12));

  // Intercept variance strictly increasing in k.
  double prev = 0.0;
  for (double k : {0.1, 0.3, 0.5, 0.8, 0.95}) {
    const auto spec = weighted_priors(3, {2.633, 1.129}, k);
    CHECK(spec.coeff_priors[0].variance > prev);
    prev = spec.coeff_priors[0].variance;
  }

  CHECK_THROWS_AS(weighted_priors(3, {2.633, 1.129}, 0.0), std::domain_error);
  CHECK_THROWS_AS(weighted_priors(3, {2.633, 1.129}, 1.0), std::domain_error);
  CHECK_THROWS_AS(weighted_priors(0, {2.633, 1.129}, 0.4), std::domain_error);
}

TEST_CASE("vague priors") {
  const auto v = vague_priors(1);
  CHECK(v.coeff_priors.size() == 2);
  for (const auto& c : v.coeff_priors) CHECK(c.variance == 1e6);
  CHECK(vague_priors(3, 40.0).coeff_priors[2].variance == doctest::Approx(1600.0));
  CHECK(vague_priors(3, 1.65).coeff_priors[0].variance == doctest::Approx(2.7225));
}

TEST_CASE("matched priors satisfy the linear-predictor moment identities") {
  const BetaShape target{2.633, 1.129};
  const auto moments = eta_mean_var_analytic(target);
  for (const PriorSpec& spec :
       {logistic_matched_priors(4), beta_matched_priors(2, target),
        weighted_priors(5, target, 0.25)}) {
    const double mu =
        spec.kind == PriorKind::logistic ? 0.0 : moments.mu_eta;
    const double var =
        spec.kind == PriorKind::logistic ? M_PI * M_PI / 3.0 : moments.var_eta;
    CHECK(spec.coeff_priors[0].mean == doctest::Approx(mu).epsilon(1e-10));
    double total = 0.0;
    for (const auto& c : spec.coeff_priors) total += c.variance;
    CHECK(total == doctest::Approx(var).epsilon(1e-10));
  }
}

TEST_CASE("Monte Carlo check: logistic-matched prior induces near-uniform theta") {
  const auto prior = logistic_matched_priors(2);
  RngStream rng(314159);
  // Standardized covariate draws: fresh standard normals serve as x rows.
  const std::size_t n = 100000;
  std::vector<double> draws(n);
  for (auto& theta : draws) {
    double eta = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double coef = normal_draw(prior.coeff_priors[j], rng);
      eta += coef * (j == 0 ? 1.0 : rng.normal());
    }
    theta = expit(eta);
  }
  CHECK(testutil::mean(draws) == doctest::Approx(0.5).epsilon(0.01 / 0.5));
  CHECK(testutil::variance(draws) == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("prior spec JSON round trip") {
  const auto spec = weighted_priors(3, beta_shapes_from_mean_cv(0.7, 0.3), 0.4);
  const auto text = prior_spec_to_json(spec);
  const auto back = prior_spec_from_json(text);
  CHECK(back.kind == PriorKind::weighted);
  CHECK(back.p == 3);
  CHECK(back.k.value() == doctest::Approx(0.4));
  CHECK(back.target->alpha == doctest::Approx(spec.target->alpha).epsilon(1e-14));
  for (std::size_t j = 0; j < spec.coeff_priors.size(); ++j) {
    CHECK(back.coeff_priors[j].mean ==
          doctest::Approx(spec.coeff_priors[j].mean).epsilon(1e-14));
    CHECK(back.coeff_priors[j].variance ==
          doctest::Approx(spec.coeff_priors[j].variance).epsilon(1e-14));
  }
  CHECK_THROWS_AS(prior_kind_from_string("bogus"), std::invalid_argument);
}

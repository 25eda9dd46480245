#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "indprior/genfunc.hpp"
#include "indprior/quadrature.hpp"
#include "support/test_utils.hpp"

using namespace indprior;

TEST_CASE("logistic MGF values") {
  CHECK(logistic_mgf(0.0, {3.0, 5.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(logistic_mgf(0.5, {0.0, 1.0}) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  CHECK(logistic_mgf(0.3, {0.0, 1.0}) ==
        doctest::Approx(logistic_mgf(-0.3, {0.0, 1.0})).epsilon(1e-13));
  CHECK_THROWS_AS(logistic_mgf(1.0, {0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(logistic_mgf(0.3, {0.0, 4.0}), std::domain_error);
}

TEST_CASE("MGF agrees with direct quadrature of exp(tx) pdf") {
  for (double t : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
    const auto q = integrate(
        [&](double x) { return std::exp(t * x) * logistic_pdf(x, {0.0, 1.0}); },
        -250.0, 250.0, 1e-10, 1e-10, 8000);
    CHECK(logistic_mgf(t, {0.0, 1.0}) == doctest::Approx(q.value).epsilon(1e-6));
  }
}

TEST_CASE("logistic CF modulus") {
  CHECK(logistic_cf_modulus(0.0, {0.0, 1.0}) == 1.0);
  CHECK(logistic_cf_modulus(1.0, {0.0, 1.0}) ==
        doctest::Approx(M_PI / std::sinh(M_PI)).epsilon(1e-12));
  double prev = 1.0;
  for (double t : {0.1, 0.4, 1.0, 2.5, 7.0}) {
    const double v = logistic_cf_modulus(t, {0.0, 1.0});
    CHECK(v < prev);
    CHECK(v == doctest::Approx(logistic_cf_modulus(-t, {0.0, 1.0})).epsilon(1e-14));
    prev = v;
  }
}

TEST_CASE("CF modulus matches the numeric Fourier integral of the pdf") {
  const auto q = integrate(
      [](double x) { return std::cos(1.0 * x) * logistic_pdf(x, {0.0, 1.0}); },
      -60.0, 60.0, 1e-11, 1e-11, 8000);
  CHECK(q.value == doctest::Approx(logistic_cf_modulus(1.0, {0.0, 1.0})).epsilon(1e-8));
}

TEST_CASE("root MGF and CF") {
  CHECK(root_mgf(0.4, 0) == doctest::Approx(logistic_mgf(0.4, {0.0, 1.0})).epsilon(1e-13));
  CHECK(root_cf(0.4, 0) == doctest::Approx(logistic_cf_modulus(0.4, {0.0, 1.0})).epsilon(1e-13));
  CHECK(root_mgf(0.5, 1) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-12));
  CHECK(root_mgf(0.0, 7) == 1.0);
  CHECK(root_cf(0.0, 7) == 1.0);

  // Shrinks toward 1 as p grows.
  double prev = 1e300;
  for (int p : {0, 1, 3, 9}) {
    const double v = root_mgf(0.8, p);
    CHECK(v < prev);
    CHECK(v > 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(root_mgf(0.5, -1), std::domain_error);
  CHECK_THROWS_AS(root_mgf(1.01, 2), std::domain_error);
}

TEST_CASE("root laws: the (p+1)-th power recovers the base transform") {
  for (int p : {0, 1, 3, 9}) {
    for (double t : {0.1, 0.45, 0.8}) {
      CHECK(std::pow(root_cf(t, p), p + 1) ==
            doctest::Approx(logistic_cf_modulus(t, {0.0, 1.0})).epsilon(1e-12));
      CHECK(std::pow(root_mgf(t, p), p + 1) ==
            doctest::Approx(logistic_mgf(t, {0.0, 1.0})).epsilon(1e-12));
    }
    for (double t : {0.5, 3.0, 11.0}) {
      const double v = root_cf(t, p);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("CF inversion recovers the logistic density") {
  const auto table = root_logistic_table(0);
  // pdf at 0 is the middle grid point.
  const std::size_t mid = table.grid.size() / 2;
  CHECK(table.grid[mid] == 0.0);
  CHECK(table.pdf[mid] == doctest::Approx(0.25).epsilon(1e-4 / 0.25));
  // Even pdf on the symmetric grid.
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    CHECK(table.pdf[i] ==
          doctest::Approx(table.pdf[table.grid.size() - 1 - i]).epsilon(1e-8));
  }
  CHECK(table.cdf.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inverted root distribution has the additive-cumulant variance") {
  const auto table = root_logistic_table(3);
  CHECK(table.variance() == doctest::Approx(M_PI * M_PI / 12.0).epsilon(0.01));
}

TEST_CASE("inversion stays healthy at large p") {
  // High orders decay (p+1) times slower in t, probing the log-space CF
  // evaluation and the tail margin of the output grid.
  const auto table = root_logistic_table(25);
  CHECK(table.variance() ==
        doctest::Approx(M_PI * M_PI / 3.0 / 26.0).epsilon(0.01));
  CHECK(table.cdf.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inversion round trip recovers the CF") {
  const auto table = root_logistic_table(0);
  for (double t : {0.5, 1.0, 2.0}) {
    double acc = 0.0;
    for (std::size_t i = 1; i < table.grid.size(); ++i) {
      const double h = table.grid[i] - table.grid[i - 1];
      acc += 0.5 * h * (table.pdf[i] * std::cos(t * table.grid[i]) +
                        table.pdf[i - 1] * std::cos(t * table.grid[i - 1]));
    }
    CHECK(acc == doctest::Approx(logistic_cf_modulus(t, {0.0, 1.0})).epsilon(1e-4));
  }
}

TEST_CASE("invalid CFs are rejected") {
  CfGridSpec spec{10.0};
  CHECK_THROWS_AS(invert_symmetric_cf([](double) { return 0.5; }, spec),
                  std::invalid_argument);
}

TEST_CASE("root-logistic sampling: identity case matches Logistic(0,1)") {
  RngStream rng(1618);
  const auto draws = sample_root_logistic(0, 100000, rng);
  const double d = testutil::ks_statistic(
      draws, [](double x) { return logistic_cdf(x, {0.0, 1.0}); });
  CHECK(d < 1.63 / std::sqrt(100000.0));
}

TEST_CASE("sums of p+1 root-logistic draws close to Logistic(0,1)") {
  for (int p : {1, 3}) {
    RngStream rng(271828 + p);
    const std::size_t n_sums = 20000;
    const auto draws = sample_root_logistic(p, n_sums * (p + 1), rng);
    std::vector<double> sums(n_sums, 0.0);
    for (std::size_t i = 0; i < n_sums; ++i) {
      for (int j = 0; j <= p; ++j) sums[i] += draws[i * (p + 1) + j];
    }
    const double d = testutil::ks_statistic(
        sums, [](double x) { return logistic_cdf(x, {0.0, 1.0}); });
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(n_sums)));
  }
}

TEST_CASE("root-logistic sample variance for p = 3") {
  RngStream rng(31337);
  const auto draws = sample_root_logistic(3, 100000, rng);
  CHECK(testutil::variance(draws) == doctest::Approx(M_PI * M_PI / 12.0).epsilon(0.02));
}

TEST_CASE("half-logistic Laplace transform values") {
  CHECK(half_logistic_laplace(0.1, {3.0, 5.0}) == doctest::Approx(0.673972).epsilon(1e-4 / 0.674));
  CHECK(half_logistic_laplace(0.1, {3.0, 5.0}) / 2.0 ==
        doctest::Approx(0.336986).epsilon(1e-4 / 0.337));
  // Total mass in the t -> 0 limit (mu = 0, where the one-sided transform is
  // exactly the half-logistic one).
  CHECK(half_logistic_laplace(1e-6, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(half_logistic_laplace(0.0, {3.0, 5.0}), std::domain_error);
  CHECK_THROWS_AS(half_logistic_laplace(-0.3, {3.0, 5.0}), std::domain_error);
}

TEST_CASE("half-to-full logistic reflection") {
  const LogisticParams params{0.0, 1.0};
  RngStream rng(46);
  auto half = half_logistic_sample(params, 100000, rng);
  auto full = half_to_full_logistic(half, params, rng);
  const double d = testutil::ks_statistic(
      full, [&](double x) { return logistic_cdf(x, params); });
  CHECK(d < 1.63 / std::sqrt(100000.0));

  // mu = 0: the reflection is x -> -x; check values are either kept or negated.
  for (std::size_t i = 0; i < half.size(); ++i) {
    CHECK((full[i] == half[i] || full[i] == -half[i]));
  }

  CHECK_THROWS_AS(half_to_full_logistic({-0.1}, params, rng), std::domain_error);

  // Reflection about a nonzero mu keeps the output logistic around mu.
  const LogisticParams shifted{4.0, 2.0};
  auto half2 = half_logistic_sample(shifted, 50000, rng);
  auto full2 = half_to_full_logistic(half2, shifted, rng);
  const double d2 = testutil::ks_statistic(
      full2, [&](double x) { return logistic_cdf(x, shifted); });
  CHECK(d2 < 1.63 / std::sqrt(50000.0));
}

TEST_CASE("numeric MGF derivative recovers the mean") {
  CHECK(mgf_derivative_numeric({7.0, 3.0}, 1e-4) == doctest::Approx(7.0).epsilon(0.01 / 7.0));
  CHECK(std::fabs(mgf_derivative_numeric({0.0, 1.0}, 1e-4)) < 1e-6);
  CHECK(mgf_derivative_numeric({5.0, 3.0}, 1e-4) == doctest::Approx(5.0).epsilon(0.01 / 5.0));
  CHECK_THROWS_AS(mgf_derivative_numeric({7.0, 3.0}, 0.2), std::domain_error);
  CHECK_THROWS_AS(mgf_derivative_numeric({7.0, 3.0}, 0.0), std::domain_error);
}

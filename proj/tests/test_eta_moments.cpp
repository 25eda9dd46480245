#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "indprior/eta_moments.hpp"

using namespace indprior;

TEST_CASE("eta_moment golden values") {
  CHECK(eta_moment({1.0, 1.0}, 1).value == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(std::fabs(eta_moment({1.0, 1.0}, 1).value) < 1e-8);
  CHECK(eta_moment({1.0, 1.0}, 2).value ==
        doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-6 / 3.28987));
  CHECK(eta_moment({2.633, 1.129}, 1).value == doctest::Approx(1.150).epsilon(0.002 / 1.15));
  CHECK_THROWS_AS(eta_moment({1.0, 1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(eta_moment({-1.0, 1.0}, 1), std::domain_error);
}

TEST_CASE("eta_moment reports a small error estimate") {
  const auto r = eta_moment({2.633, 1.129}, 2);
  CHECK(r.error <= 1e-8);
}

TEST_CASE("eta_mean_var golden values") {
  const auto u = eta_mean_var({1.0, 1.0});
  CHECK(std::fabs(u.mu_eta) < 1e-8);
  CHECK(u.var_eta == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-8));

  const auto m = eta_mean_var({2.633, 1.129});
  CHECK(m.mu_eta == doctest::Approx(1.150).epsilon(0.003 / 1.15));
  CHECK(m.var_eta == doctest::Approx(1.843).epsilon(0.003 / 1.843));

  const auto sym = eta_mean_var({5.0, 5.0});
  CHECK(std::fabs(sym.mu_eta) < 1e-8);
}

TEST_CASE("analytic route at classic points") {
  const auto u = eta_mean_var_analytic({1.0, 1.0});
  CHECK(u.mu_eta == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(u.var_eta == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-12));

  // Swapping shapes negates the mean and keeps the variance.
  const auto f = eta_mean_var_analytic({2.633, 1.129});
  const auto g = eta_mean_var_analytic({1.129, 2.633});
  CHECK(f.mu_eta == doctest::Approx(-g.mu_eta).epsilon(1e-14));
  CHECK(f.var_eta == doctest::Approx(g.var_eta).epsilon(1e-14));
}

TEST_CASE("quadrature and analytic routes agree on a shape grid") {
  const double grid[] = {0.5, 1.0, 1.129, 2.0, 2.633, 5.0, 10.0};
  for (double a : grid) {
    for (double b : grid) {
      const auto quad = eta_mean_var({a, b});
      const auto exact = eta_mean_var_analytic({a, b});
      CHECK(std::fabs(quad.mu_eta - exact.mu_eta) < 1e-6);
      CHECK(std::fabs(quad.var_eta - exact.var_eta) < 1e-6);
    }
  }
}

TEST_CASE("quadrature mean is antisymmetric in the shapes") {
  const auto f = eta_moment({2.633, 1.129}, 1);
  const auto g = eta_moment({1.129, 2.633}, 1);
  CHECK(f.value == doctest::Approx(-g.value).epsilon(1e-8));
}

TEST_CASE("variance decreases along the symmetric diagonal") {
  double prev = 1e300;
  for (double a : {1.0, 2.0, 5.0, 10.0}) {
    const auto m = eta_mean_var({a, a});
    CHECK(m.var_eta < prev);
    prev = m.var_eta;
  }
}

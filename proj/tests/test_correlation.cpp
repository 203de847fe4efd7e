#include "oracle.hpp"

#include <doctest.h>
#include <wsnacc/correlation.hpp>
#include <wsnacc/error.hpp>
#include <wsnacc/rng.hpp>

#include <cmath>
#include <vector>

using namespace wsnacc;

namespace {
const auto kExp70 = CorrelationParams::make(70.0, 1.0, 0.5);
}

TEST_CASE("params reject out-of-domain values") {
  CHECK_THROWS_AS(CorrelationParams::make(0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(CorrelationParams::make(-1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(CorrelationParams::make(70.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(CorrelationParams::make(70.0, 2.0001, 0.5), DomainError);
  CHECK_THROWS_AS(CorrelationParams::make(70.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(CorrelationParams::make(70.0, 1.0, 1.5), DomainError);
  CHECK_NOTHROW(CorrelationParams::make(70.0, 2.0, 1.0));
}

TEST_CASE("kernel values") {
  CHECK(kernel(0.0, kExp70) == 1.0);
  CHECK(kernel(70.0, kExp70) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // exp(-2/70) to 15 digits, evaluated with mpmath.
  CHECK(kernel(2.0, kExp70) == doctest::Approx(0.971832875032981).epsilon(1e-14));
  CHECK_THROWS_AS(kernel(-1.0, kExp70), DomainError);
}

TEST_CASE("kernel is 1 at zero and strictly decreasing") {
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const auto p = CorrelationParams::make(rng.uniform(0.5, 200.0),
                                           rng.uniform(0.05, 2.0), 0.5);
    CHECK(kernel(0.0, p) == 1.0);
    double a = rng.uniform(0.0, 100.0), b = rng.uniform(0.0, 100.0);
    if (a == b)
      continue;
    if (a > b)
      std::swap(a, b);
    const double ka = kernel(a, p), kb = kernel(b, p);
    CHECK(ka >= kb);
    CHECK(ka > 0.0);
    CHECK(ka <= 1.0);
    // Strictness holds wherever the values are distinguishable in doubles.
    if (kb > 1e-300 && ka < 1.0)
      CHECK(ka > kb);
  }
}

TEST_CASE("radius from threshold") {
  CHECK(radius_from_threshold(kExp70.with_threshold(1.0)) == 0.0);
  // 70 ln 2 and 70 sqrt(ln 2), mpmath.
  CHECK(radius_from_threshold(kExp70) ==
        doctest::Approx(48.5203026391962).epsilon(1e-13));
  CHECK(radius_from_threshold(CorrelationParams::make(70.0, 2.0, 0.5)) ==
        doctest::Approx(58.2788227810388).epsilon(1e-13));
}

TEST_CASE("radius agrees with bisection on kernel(r) = tau") {
  for (double theta2 : {0.5, 1.0, 1.5, 2.0})
    for (double tau : {0.05, 0.3, 0.5, 0.9}) {
      const auto p = CorrelationParams::make(70.0, theta2, tau);
      const double root = oracle::bisect(
          [&](double d) { return oracle::power_exp(d, 70.0, theta2) - tau; },
          0.0, 1e4);
      CHECK(radius_from_threshold(p) == doctest::Approx(root).epsilon(1e-9));
      CHECK(kernel(radius_from_threshold(p), p) ==
            doctest::Approx(tau).epsilon(1e-9));
    }
}

TEST_CASE("radius strictly decreasing in tau") {
  for (double theta2 : {0.3, 1.0, 2.0}) {
    double prev = INFINITY;
    for (int k = 1; k <= 100; ++k) {
      const double r =
          radius_from_threshold(CorrelationParams::make(70.0, theta2, k / 100.0));
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("window statistics") {
  const std::vector<double> a{1, 2, 3};
  CHECK(sample_mean(a) == 2.0);
  CHECK(sample_mean(std::vector<double>{5, 5, 5, 5}) == 5.0);
  CHECK(sample_mean(std::vector<double>{0.3, 0.7, 1.1, 1.9}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(sample_mean(std::vector<double>{}), DomainError);

  CHECK(sample_variance(std::vector<double>{5, 5, 5}) == 0.0);
  CHECK(sample_variance(std::vector<double>{1, 3}) == 2.0);
  CHECK(sample_variance(std::vector<double>{0, 2, 4}) == 4.0);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1}), DomainError);

  CHECK(sample_covariance(a, a) == 1.0);
  CHECK(sample_covariance(a, std::vector<double>{3, 2, 1}) == -1.0);
  CHECK(sample_covariance(a, std::vector<double>{7, 7, 7}) == 0.0);
  CHECK_THROWS_AS(sample_covariance(a, std::vector<double>{1, 2}), DomainError);
  CHECK_THROWS_AS(
      sample_covariance(std::vector<double>{1}, std::vector<double>{1}),
      DomainError);
}

TEST_CASE("sample correlation") {
  const std::vector<double> a{1, 2, 3};
  CHECK(sample_correlation(a, std::vector<double>{2, 4, 6}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sample_correlation(a, std::vector<double>{3, 2, 1}) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  // cov = 1.5, var = 7/3 and 4/3: 1.5 / sqrt(28/9) (numpy.corrcoef agrees).
  CHECK(sample_correlation(std::vector<double>{1, 2, 4},
                           std::vector<double>{1, 3, 3}) ==
        doctest::Approx(0.7559289460184544).epsilon(1e-14));
  CHECK_THROWS_AS(sample_correlation(a, std::vector<double>{7, 7, 7}),
                  DegenerateWindowError);
}

TEST_CASE("self correlation is exactly one") {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> w(2 + k % 20);
    for (auto &v : w)
      v = rng.uniform(-1e3, 1e3);
    CHECK(sample_correlation(w, w) == 1.0);
  }
}

TEST_CASE("sample correlation converges on bivariate normal draws") {
  Rng rng(2024);
  for (double rho : {-0.8, 0.0, 0.3, 0.9}) {
    double total_error = 0.0;
    const int trials = 30;
    for (int t = 0; t < trials; ++t) {
      std::vector<double> a(10000), b(10000);
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double z1 = rng.normal(), z2 = rng.normal();
        a[k] = z1;
        b[k] = rho * z1 + std::sqrt(1 - rho * rho) * z2;
      }
      total_error += std::abs(sample_correlation(a, b) - rho);
    }
    CHECK(total_error / trials < 0.05);
  }
}

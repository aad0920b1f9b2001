#include <doctest.h>

#include <cmath>
#include <random>

#include "d2d/fading.hpp"

using d2d::FadingKind;
using d2d::FadingModel;

TEST_CASE("exponential quantile closed form") {
  FadingModel f = FadingModel::exponential(0.2);
  CHECK(f.mean() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(f.variance() == doctest::Approx(0.04).epsilon(1e-12));
  // -mean * log(1 - q)
  CHECK(f.quantile(0.9) == doctest::Approx(0.4605170185988092).epsilon(1e-13));
  CHECK(f.quantile(0.5) == doctest::Approx(0.2 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("quantiles invert elementary distribution functions") {
  FadingModel fe = FadingModel::exponential(0.7);
  for (double q : {0.01, 0.2, 0.5, 0.9, 0.99}) {
    double x = fe.quantile(q);
    CHECK(1.0 - std::exp(-x / 0.7) == doctest::Approx(q).epsilon(1e-10));
  }
  FadingModel fg = FadingModel::gaussian(1.0, 0.04);
  for (double q : {0.05, 0.3, 0.5, 0.9, 0.999}) {
    double x = fg.quantile(q);
    double cdf = 0.5 * std::erfc(-(x - 1.0) / (0.2 * std::sqrt(2.0)));
    CHECK(cdf == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("gaussian quantiles pin to the normal table") {
  FadingModel f = FadingModel::gaussian(1.0, 0.04);
  CHECK(f.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.quantile(0.975) == doctest::Approx(1.3919927969080108).epsilon(1e-10));
  CHECK(f.quantile(0.025) == doctest::Approx(1.0 - 0.2 * 1.959963984540054).epsilon(1e-10));
}

TEST_CASE("gaussian gain is truncated at zero") {
  FadingModel f = FadingModel::gaussian(0.1, 1.0);
  CHECK(f.quantile(0.05) == 0.0);  // raw normal quantile is far negative
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20000; ++k) CHECK(f.sample(rng) >= 0.0);
}

TEST_CASE("chi squared quantiles match a gamma oracle") {
  // mean 0.2, variance 0.01 -> shape 4, scale 0.05; reference values from the
  // closed-form Erlang distribution function
  FadingModel f = FadingModel::chi_squared(0.2, 0.01);
  CHECK(f.quantile(0.95) == doctest::Approx(0.38768282639663626).epsilon(1e-9));
  CHECK(f.quantile(0.5) == doctest::Approx(0.1836030374425448).epsilon(1e-9));
}

TEST_CASE("log normal quantiles match the moment matched oracle") {
  FadingModel f = FadingModel::log_normal(0.2, 0.01);
  CHECK(f.quantile(0.95) == doctest::Approx(0.38906356760184413).epsilon(1e-9));
  CHECK(f.quantile(0.5) == doctest::Approx(0.1788854381999832).epsilon(1e-9));
}

TEST_CASE("samples reproduce the model moments and quantiles") {
  struct Case {
    FadingModel f;
    double mean_tol;
  };
  const Case cases[] = {
      {FadingModel::exponential(0.2), 4.0 * 0.2 / std::sqrt(2e5)},
      // narrow Gaussian so the truncation at zero is immaterial
      {FadingModel::gaussian(0.4, 0.0016), 4.0 * 0.04 / std::sqrt(2e5)},
      {FadingModel::chi_squared(0.2, 0.01), 4.0 * 0.1 / std::sqrt(2e5)},
      {FadingModel::log_normal(0.2, 0.01), 4.0 * 0.1 / std::sqrt(2e5)},
  };
  std::mt19937_64 rng(123);
  for (const Case& c : cases) {
    const int n = 200000;
    double sum = 0.0;
    int below = 0;
    const double q90 = c.f.quantile(0.9);
    for (int k = 0; k < n; ++k) {
      double x = c.f.sample(rng);
      sum += x;
      if (x <= q90) ++below;
    }
    CHECK(std::fabs(sum / n - c.f.mean()) < c.mean_tol);
    // empirical mass below the 0.9 quantile, 5 sigma band
    CHECK(std::fabs(static_cast<double>(below) / n - 0.9) < 5.0 * std::sqrt(0.09 / n));
  }
}

TEST_CASE("quantile domain is the open unit interval") {
  FadingModel f = FadingModel::exponential(1.0);
  CHECK_THROWS(f.quantile(0.0));
  CHECK_THROWS(f.quantile(1.0));
  CHECK_THROWS(f.quantile(-0.5));
}

TEST_CASE("invalid moments are rejected") {
  CHECK_THROWS(FadingModel::exponential(0.0));
  CHECK_THROWS(FadingModel::exponential(-1.0));
  CHECK_THROWS(FadingModel::gaussian(1.0, 0.0));
  CHECK_THROWS(FadingModel::chi_squared(-0.2, 0.01));
  CHECK_THROWS(FadingModel::log_normal(0.2, -0.01));
}

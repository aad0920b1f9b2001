#pragma once

#include <cstdint>
#include <random>

namespace d2d {

enum class FadingKind { Exponential, Gaussian, ChiSquared, LogNormal };

/// Nonnegative fading gain model. All four kinds are parameterized by their
/// nominal mean (and variance where it is a free parameter); Gaussian draws
/// and quantiles are truncated at zero so the gain stays physical.
class FadingModel {
 public:
  static FadingModel exponential(double mean);
  static FadingModel gaussian(double mean, double variance);
  static FadingModel chi_squared(double mean, double variance);
  static FadingModel log_normal(double mean, double variance);

  FadingKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  /// Inverse CDF. q must lie strictly inside (0, 1).
  double quantile(double q) const;

  double sample(std::mt19937_64& rng) const;

 private:
  FadingModel(FadingKind k, double m, double v);

  FadingKind kind_;
  double mean_;
  double variance_;
  // derived parameters, meaning depends on kind:
  //   Gaussian:   p0_ = sd
  //   ChiSquared: p0_ = gamma shape, p1_ = gamma scale
  //   LogNormal:  p0_ = log-space mean, p1_ = log-space sd
  double p0_ = 0.0;
  double p1_ = 0.0;
};

namespace detail {

/// Standard normal inverse CDF. Rational approximation refined with one
/// Halley step on erfc, abs error well below 1e-9 over (0, 1).
double probit(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

}  // namespace detail

}  // namespace d2d

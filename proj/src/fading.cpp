#include "d2d/fading.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace d2d {

namespace detail {

double probit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probit: p must be in (0,1)");

  // Acklam's rational approximation in three regions.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley refinement against the exact CDF.
  static const double sqrt2 = std::sqrt(2.0);
  static const double sqrt2pi = std::sqrt(8.0 * std::atan(1.0));
  double e = 0.5 * std::erfc(-x / sqrt2) - p;
  double u = e * sqrt2pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::invalid_argument("gamma_p: a must be positive");
  if (x < 0.0) throw std::invalid_argument("gamma_p: x must be nonnegative");
  if (x == 0.0) return 0.0;

  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series for P(a,x)
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a,x)
  const double tiny = 1e-300;
  double bb = x + 1.0 - a;
  double cc = 1.0 / tiny;
  double dd = 1.0 / bb;
  double h = dd;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    bb += 2.0;
    dd = an * dd + bb;
    if (std::fabs(dd) < tiny) dd = tiny;
    cc = bb + an / cc;
    if (std::fabs(cc) < tiny) cc = tiny;
    dd = 1.0 / dd;
    double del = dd * cc;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + a * std::log(x) - lg) * h;
  double p = 1.0 - q;
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

}  // namespace detail

FadingModel::FadingModel(FadingKind k, double m, double v) : kind_(k), mean_(m), variance_(v) {}

static void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

FadingModel FadingModel::exponential(double mean) {
  check_positive(mean, "fading mean");
  return FadingModel(FadingKind::Exponential, mean, mean * mean);
}

FadingModel FadingModel::gaussian(double mean, double variance) {
  check_positive(mean, "fading mean");
  check_positive(variance, "fading variance");
  FadingModel f(FadingKind::Gaussian, mean, variance);
  f.p0_ = std::sqrt(variance);
  return f;
}

FadingModel FadingModel::chi_squared(double mean, double variance) {
  check_positive(mean, "fading mean");
  check_positive(variance, "fading variance");
  FadingModel f(FadingKind::ChiSquared, mean, variance);
  // Scaled chi-squared matched to (mean, variance), kept as a gamma law:
  // shape mean^2/var, scale var/mean. Degrees of freedom need not be integer.
  f.p0_ = mean * mean / variance;
  f.p1_ = variance / mean;
  return f;
}

FadingModel FadingModel::log_normal(double mean, double variance) {
  check_positive(mean, "fading mean");
  check_positive(variance, "fading variance");
  FadingModel f(FadingKind::LogNormal, mean, variance);
  double s2 = std::log1p(variance / (mean * mean));
  f.p0_ = std::log(mean) - 0.5 * s2;
  f.p1_ = std::sqrt(s2);
  return f;
}

double FadingModel::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile: q must be in (0,1)");
  switch (kind_) {
    case FadingKind::Exponential:
      return -mean_ * std::log1p(-q);
    case FadingKind::Gaussian: {
      double x = mean_ + p0_ * detail::probit(q);
      return x > 0.0 ? x : 0.0;
    }
    case FadingKind::ChiSquared: {
      // bisect P(shape, x/scale) = q
      const double shape = p0_, scale = p1_;
      double hi = mean_ + 10.0 * std::sqrt(variance_);
      while (detail::gamma_p(shape, hi / scale) < q) hi *= 2.0;
      double lo = 0.0;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (detail::gamma_p(shape, mid / scale) < q) lo = mid; else hi = mid;
        if (hi - lo <= 1e-12 * (1.0 + hi)) break;
      }
      return 0.5 * (lo + hi);
    }
    case FadingKind::LogNormal:
      return std::exp(p0_ + p1_ * detail::probit(q));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double FadingModel::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case FadingKind::Exponential:
      return std::exponential_distribution<double>(1.0 / mean_)(rng);
    case FadingKind::Gaussian: {
      double x = std::normal_distribution<double>(mean_, p0_)(rng);
      return x > 0.0 ? x : 0.0;
    }
    case FadingKind::ChiSquared:
      return std::gamma_distribution<double>(p0_, p1_)(rng);
    case FadingKind::LogNormal:
      return std::lognormal_distribution<double>(p0_, p1_)(rng);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace d2d

#include "vlc/gaussian.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "vlc/error.hpp"

namespace vlc::gauss {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Acklam's rational approximation; relative error below 1.2e-9, refined
// by Newton steps on cdf below.
constexpr std::array<double, 6> kCentralNum = {
    -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
    1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kCentralDen = {
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01,  -1.328068155288572e+01};
constexpr std::array<double, 6> kTailNum = {
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kTailDen = {
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
    3.754408661907416e+00};
constexpr double kTailSplit = 0.02425;

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = c[0];
  for (std::size_t i = 1; i < N; ++i) acc = acc * x + c[i];
  return acc;
}

double initial_lower(double s) {
  if (s < kTailSplit) {
    const double q = std::sqrt(-2.0 * std::log(s));
    return horner(kTailNum, q) / (horner(kTailDen, q) * q + 1.0);
  }
  const double q = s - 0.5;
  const double r = q * q;
  return horner(kCentralNum, r) * q / (horner(kCentralDen, r) * r + 1.0);
}

// Quantile for 0 < s <= 1/2.
double quantile_lower(double s) {
  double x = initial_lower(s);
  for (int step = 0; step < 2; ++step) {
    const double density = pdf(x);
    if (density == 0.0) break;
    x -= (cdf(x) - s) / density;
  }
  return x;
}

}  // namespace

double pdf(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }

double cdf(double u) { return 0.5 * std::erfc(-u * kInvSqrt2); }

double ccdf(double u) { return 0.5 * std::erfc(u * kInvSqrt2); }

double quantile(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("quantile: s outside [0, 1]");
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  if (s == 1.0) return std::numeric_limits<double>::infinity();
  if (s <= 0.5) return quantile_lower(s);
  // 1 - s is exact for s >= 1/2.
  return -quantile_lower(1.0 - s);
}

double f_g(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("f_g: s outside [0, 1]");
  if (s == 0.0 || s == 1.0) return 0.0;
  return pdf(quantile(s));
}

double g_g(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("g_g: s outside [0, 1]");
  if (s == 0.0 || s == 1.0) return 0.0;
  const double x = quantile(s);
  return pdf(x) * x;
}

double quantile_sq_asymptotic(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("quantile_sq_asymptotic: s outside (0, 1)");
  const double inner = std::log(1.0 / (2.0 * std::sqrt(std::numbers::pi) * s));
  if (!(inner > 0.0)) {
    throw DomainError("quantile_sq_asymptotic: inner logarithm not positive");
  }
  return 2.0 * inner - std::log(inner);
}

std::pair<double, double> quantile_moments(double a, double b) {
  if (!(a >= 0.0 && b <= 1.0 && a < b)) {
    throw DomainError("quantile_moments: need 0 <= a < b <= 1");
  }
  return {f_g(a) - f_g(b), (b - a) - g_g(b) + g_g(a)};
}

}  // namespace vlc::gauss

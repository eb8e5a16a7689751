#pragma once

#include <utility>

/// Standard Gaussian density, distribution and quantile, plus the two
/// derived functions f_G(s) = phi(Phi^-1(s)) and g_G(s) = f_G(s) Phi^-1(s)
/// that appear when Gaussian quantiles are integrated over probabilities.
namespace vlc::gauss {

double pdf(double u);
double cdf(double u);
/// 1 - cdf(u), accurate in the upper tail.
double ccdf(double u);

/// Inverse of cdf on [0, 1]; returns -inf / +inf at 0 / 1.
/// Throws DomainError outside [0, 1].
double quantile(double s);

/// phi(Phi^-1(s)) on (0, 1) and exactly 0 at the endpoints.
double f_g(double s);

/// f_g(s) * Phi^-1(s) on (0, 1) and exactly 0 at the endpoints.
double g_g(double s);

/// Small-s asymptotic 2 ln(1/(2 sqrt(pi) s)) - ln ln(1/(2 sqrt(pi) s))
/// for Phi^-1(s)^2. Needs 2 sqrt(pi) s < 1 so the inner log is positive.
double quantile_sq_asymptotic(double s);

/// (int_a^b Phi^-1(s) ds, int_a^b Phi^-1(s)^2 ds) in closed form,
/// for 0 <= a < b <= 1.
std::pair<double, double> quantile_moments(double a, double b);

}  // namespace vlc::gauss

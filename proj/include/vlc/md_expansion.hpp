#pragma once

#include "vlc/source.hpp"

/// Moderate-deviations refinements of the Gaussian approximation for the
/// normalized centered information density, and their inversion at a
/// polynomially small probability.
namespace vlc::md {

struct MdApprox {
  double value;       // the point estimate
  double correction;  // multiplicative skewness factor inside `value`
  double bound;       // magnitude of the neglected remainder
  bool in_regime = true;
};

enum class TailSide { upper, lower };

/// upper: 1 - F_n(z) ~ Q(z) exp(S z^3 / sqrt n)
/// lower: F_n(-z) ~ Phi(-z) exp(-S z^3 / sqrt n)
/// bound is phi(z) / sqrt(n); in_regime is false past z = 2 n^(1/6).
MdApprox refined_md_tail(const InfoMoments& m, int n, double z, TailSide side);

enum class InversionSide { lower_eq_md1, upper_eq_md2 };

/// Approximates 1 - Phi(zeta_n(eps)) by eps (1 + S Phi^-1(eps)^3 / sqrt n)
/// (lower_eq_md1) or Phi(zeta_n(1 - eps)) by eps (1 - S Phi^-1(eps)^3 / sqrt n)
/// (upper_eq_md2), with bound
/// |Phi^-1(eps)| / sqrt n. Requires 0 < eps <= 1/2.
MdApprox quantile_inversion(const InfoMoments& m, int n, double eps, InversionSide side);

}  // namespace vlc::md

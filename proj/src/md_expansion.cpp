#include "vlc/md_expansion.hpp"

#include <cmath>

#include "vlc/error.hpp"
#include "vlc/gaussian.hpp"

namespace vlc::md {

MdApprox refined_md_tail(const InfoMoments& m, int n, double z, TailSide side) {
  if (n < 1) throw DomainError("blocklength must be >= 1");
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("refined_md_tail needs finite z >= 0");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double skew = m.skew_or_throw();
  const double exponent = skew * z * z * z / root_n;
  MdApprox out{};
  if (side == TailSide::upper) {
    out.correction = std::exp(exponent);
    out.value = gauss::ccdf(z) * out.correction;
  } else {
    out.correction = std::exp(-exponent);
    out.value = gauss::cdf(-z) * out.correction;
  }
  out.bound = gauss::pdf(z) / root_n;
  out.in_regime = z <= 2.0 * std::pow(static_cast<double>(n), 1.0 / 6.0);
  return out;
}

MdApprox quantile_inversion(const InfoMoments& m, int n, double eps, InversionSide side) {
  if (n < 1) throw DomainError("blocklength must be >= 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("quantile_inversion needs 0 < eps <= 1/2");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double z = gauss::quantile(eps);
  const double shift = m.skew_or_throw() * z * z * z / root_n;
  MdApprox out{};
  out.correction = side == InversionSide::lower_eq_md1 ? 1.0 + shift : 1.0 - shift;
  out.value = eps * out.correction;
  out.bound = std::abs(z) / root_n;
  return out;
}

}  // namespace vlc::md

#include "vlc/large_deviations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"

namespace vlc::ld {

namespace {

std::vector<double> log_probs(const DiscreteSource& src) {
  std::vector<double> out;
  out.reserve(src.size());
  for (const auto& p : src.probs()) out.push_back(ln_of(p));
  return out;
}

Cgf cgf_from_logs(const std::vector<double>& lp, double s) {
  double top = -std::numeric_limits<double>::infinity();
  for (double l : lp) top = std::max(top, s * l);
  double z = 0.0;
  double m1 = 0.0;
  for (double l : lp) {
    const double w = std::exp(s * l - top);
    z += w;
    m1 += w * l;
  }
  m1 /= z;
  double m2 = 0.0;
  for (double l : lp) {
    const double w = std::exp(s * l - top) / z;
    m2 += w * (l - m1) * (l - m1);
  }
  return {top + std::log(z), m1, m2};
}

}  // namespace

Cgf cgf(const DiscreteSource& src, double s) {
  if (!std::isfinite(s)) throw DomainError("cgf: s must be finite");
  return cgf_from_logs(log_probs(src), s);
}

RateSolution rate_function(const DiscreteSource& src, double a) {
  const auto lp = log_probs(src);
  const auto [lo_it, hi_it] = std::minmax_element(lp.begin(), lp.end());
  if (!(a > *lo_it && a < *hi_it)) throw DomainError("rate_function: a outside the range of Lambda'");

  // Lambda' is increasing; bracket the root by doubling away from s = 1.
  double lo = 1.0;
  double hi = 1.0;
  double step = 1.0;
  if (cgf_from_logs(lp, 1.0).d1 < a) {
    while (cgf_from_logs(lp, hi).d1 < a) {
      lo = hi;
      hi += step;
      step *= 2.0;
      if (hi > 1e6) throw DomainError("rate_function: failed to bracket the root");
    }
  } else {
    while (cgf_from_logs(lp, lo).d1 > a) {
      hi = lo;
      lo -= step;
      step *= 2.0;
      if (lo < -1e6) throw DomainError("rate_function: failed to bracket the root");
    }
  }

  double s = 1.0;
  if (s <= lo || s >= hi) s = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const Cgf c = cgf_from_logs(lp, s);
    const double gap = c.d1 - a;
    if (std::abs(gap) < 1e-12) break;
    if (gap < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    double next = c.d2 > 0.0 ? s - gap / c.d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s) break;
    s = next;
  }
  const Cgf c = cgf_from_logs(lp, s);
  return {s, a * s - c.lambda};
}

double upsilon_with_span(double span_nats, double s) {
  if (!(s > 0.0)) throw DomainError("upsilon needs s > 0");
  if (span_nats <= 0.0) return 1.0 / s;
  return span_nats / std::expm1(span_nats * s);
}

double upsilon(const DiscreteSource& src, double s) {
  return upsilon_with_span(lattice_span(src) * std::numbers::ln2, s);
}

namespace {

SldApprox assemble(const DiscreteSource& src, int n, double s, double a_n, BrKind kind) {
  if (n < 1) throw DomainError("blocklength must be >= 1");
  if (!(s > 0.0)) throw DomainError("strong large deviations need s > 0");
  const Cgf c = cgf(src, s);
  if (!(c.d2 > 0.0)) throw DomainError("strong large deviations need a nondegenerate source");
  const double span = lattice_span(src) * std::numbers::ln2;
  double factor = 0.0;
  if (kind == BrKind::atom) {
    if (span <= 0.0) throw DomainError("atom masses vanish at leading order for a nonlattice source");
    factor = span;
  } else {
    factor = upsilon_with_span(span, s);
  }
  const double rate = s * c.d1 - c.lambda;  // Lambda*(Lambda'(s))
  SldApprox out;
  out.exponent_k = n * rate + s * a_n + a_n * a_n / (2.0 * n * c.d2);
  out.prefactor_log = std::log(factor) - 0.5 * std::log(2.0 * std::numbers::pi * n * c.d2);
  out.log_value = -out.exponent_k + out.prefactor_log;
  out.in_regime = std::abs(a_n) <= std::pow(static_cast<double>(n), 0.9);
  return out;
}

}  // namespace

SldApprox bahadur_rao(const DiscreteSource& src, int n, double s, BrKind kind) {
  return assemble(src, n, s, 0.0, kind);
}

SldApprox sld_perturbed(const DiscreteSource& src, int n, double s, double a_n) {
  return assemble(src, n, s, a_n, BrKind::tail);
}

}  // namespace vlc::ld

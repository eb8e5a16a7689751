#pragma once

#include "vlc/source.hpp"

/// Tilted cumulants of f = ln P_X(X) under the counting measure on the
/// support, and strong large-deviations approximations of counting-measure
/// masses. Everything here is in nats.
namespace vlc::ld {

struct Cgf {
  double lambda;  // ln sum_x P(x)^s
  double d1;      // Lambda'(s)
  double d2;      // Lambda''(s)
};

Cgf cgf(const DiscreteSource& src, double s);

struct RateSolution {
  double s;     // root of Lambda'(s) = a
  double rate;  // a s - Lambda(s)
};

/// Legendre transform at a, for a strictly inside (min ln p, max ln p).
/// Throws DomainError outside that range or for an equiprobable source.
RateSolution rate_function(const DiscreteSource& src, double a);

/// d / (e^{d s} - 1) with d the lattice span in nats, or 1/s for a
/// nonlattice source. Requires s > 0.
double upsilon_with_span(double span_nats, double s);
double upsilon(const DiscreteSource& src, double s);

struct SldApprox {
  double log_value;     // -exponent_k + prefactor_log
  double exponent_k;
  double prefactor_log;
  bool in_regime = true;
};

enum class BrKind { tail, atom };

/// Leading-order Bahadur-Rao approximation of the number of sequences with
/// sum of ln P(x_i) above n Lambda'(s) (tail) or equal to it (atom).
/// The atom form needs a lattice source.
SldApprox bahadur_rao(const DiscreteSource& src, int n, double s, BrKind kind = BrKind::tail);

/// Same prefactor with the exponent n Lambda*(a) + s a_n + a_n^2 / (2 n Lambda''(s)).
/// `in_regime` is false when |a_n| > n^0.9.
SldApprox sld_perturbed(const DiscreteSource& src, int n, double s, double a_n);

}  // namespace vlc::ld

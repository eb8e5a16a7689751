#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "vlc/asymptotics.hpp"
#include "vlc/source.hpp"

/// Verification suites comparing the exact limits with their bounds and
/// expansions. Each suite returns a verdict plus the numbers behind it.
namespace vlc::checks {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();
};

/// Ordinary least-squares slope of y on x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Blocklengths lo, lo + step, ..., <= hi.
std::vector<int> int_range(int lo, int hi, int step = 1);

struct SourceCase {
  std::string label;
  DiscreteSource source;
};

/// Bernoulli(3/10), Bernoulli(1/4) and {1/2, 1/3, 1/6}.
std::vector<SourceCase> oracle_sources();
/// Bernoulli(3/10) and Bernoulli(1/4).
std::vector<SourceCase> binary_sources();

/// m_star and l_star against the sequence-by-sequence oracle, exact.
CheckOutcome oracle_equality(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                             const std::vector<mpq_class>& eps);

/// Step-function integral bounds on the cutoff expectation of log2 rank.
/// Both inequalities must hold strictly.
CheckOutcome sandwich(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                      const std::vector<mpq_class>& eps);

/// E<iota>_eps - log2(1 + n H) - log2 e <= L* <= E<iota>_eps, up to `tol` bits.
CheckOutcome one_shot(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                      const std::vector<mpq_class>& eps, double tol = 1e-9);

/// E floor(log2 rank) = int_0^1 ceil(log2 (M* + 1)) ds - 1, exact.
CheckOutcome sv_identity(const std::vector<SourceCase>& sources, const std::vector<int>& ns);

/// Slopes against log2 n of L* - vl3 (|.| < 0.05) and of L* - vl2
/// (within 0.05 of -(1 - eps)/2), for each eps > 0.
CheckOutcome third_order_slopes(const DiscreteSource& src, const std::vector<int>& ns,
                                const std::vector<mpq_class>& eps);

/// Slope of L*(0) - (n H - log2(n) / 2) against log2 n, |.| < 0.05.
CheckOutcome zero_error_slope(const DiscreteSource& src, const std::vector<int>& ns);

/// log2 M*(n, eps_n) - fl_md_expansion at eps_n = 1/n and 1 - 1/n. The
/// convention with the smaller worst-side |slope| among bits_paper and
/// nats_converted is selected and must reach |slope| < 0.1 and
/// max |remainder| < 5 bits on both sides; the others are reported.
CheckOutcome md_block(const DiscreteSource& src, const std::vector<int>& ns);

/// |Phi(zeta_n(1 - 1/n)) n - (1 - S Phi^-1(1/n)^3 / sqrt n)| <= 10 |Phi^-1(1/n)| / sqrt n.
CheckOutcome md_inversion(const DiscreteSource& src, const std::vector<int>& ns);

/// Leading-order Bahadur-Rao at s = 1 against the exact count of sequences
/// with iota_n < -n Lambda'(1): error below 0.1 nats at n_large and
/// smaller than at n_small.
CheckOutcome bahadur_rao(const DiscreteSource& src, int n_small, int n_large);

/// Quantile roundtrip, closed-form quantile integrals against quadrature,
/// and the small-s expansion of the squared quantile.
CheckOutcome gaussian();

/// Suite names understood by the command-line check runner.
const std::vector<std::string>& check_names();

}  // namespace vlc::checks

#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vlc {

/// Finite-alphabet memoryless source with an exact rational pmf.
///
/// Invariants (checked on construction): at least two symbols with
/// positive probability, probabilities sum to exactly 1. Symbols with
/// zero probability are dropped.
class DiscreteSource {
 public:
  DiscreteSource(std::vector<std::string> symbols, std::vector<mpq_class> probs,
                 std::optional<double> lattice_span_override = std::nullopt);

  /// Bernoulli(p): symbols "0", "1" with P(1) = p.
  static DiscreteSource bernoulli(const mpq_class& p);
  static DiscreteSource uniform(std::size_t size);
  /// Probabilities given as "num/den" or exact decimal strings.
  static DiscreteSource from_strings(const std::vector<std::string>& probs);

  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::vector<mpq_class>& probs() const noexcept { return probs_; }
  const mpq_class& max_prob() const noexcept { return max_prob_; }
  const std::optional<double>& lattice_span_override() const noexcept { return span_override_; }

  /// "{1/2, 1/4, 1/4}"
  std::string describe() const;

 private:
  std::vector<std::string> symbols_;
  std::vector<mpq_class> probs_;
  mpq_class max_prob_;
  std::optional<double> span_override_;
};

/// Exact parse of "a/b", "-a/b", integers and decimals such as "0.25" or
/// "2.5e-3". Throws ParseError for anything else (including "nan").
mpq_class parse_rational(std::string_view text);

/// Canonical "num/den" (or "num" when the denominator is 1).
std::string format_rational(const mpq_class& q);

/// Source spec JSON: {"symbols": [...], "probs": ["3/10", "0.7"]} with an
/// optional "lattice_span" (bits) override. Numeric JSON probabilities are
/// rejected; they would have to be rationalized from a binary float.
DiscreteSource parse_source_json(std::string_view text);
DiscreteSource load_source(const std::filesystem::path& path);

/// Moments of the information density -log2 P_X(X).
struct InfoMoments {
  double entropy = 0.0;     // bits
  double varentropy = 0.0;  // bits^2
  /// One-sixth of the skewness; absent when the varentropy is zero.
  std::optional<double> skew;

  /// Throws DomainError when the skewness is undefined.
  double skew_or_throw() const;
};

InfoMoments info_moments(const DiscreteSource& src);

/// Renyi entropy in bits for alpha >= 0; Shannon entropy at alpha = 1.
double renyi_entropy(const DiscreteSource& src, double alpha);

/// (H_0, H_inf) = (log2 |supp|, -log2 max p).
std::pair<double, double> support_entropies(const DiscreteSource& src);

/// Maximal span (bits) of log2 P_X(X), or 0 for a nonlattice source.
///
/// Exact when every probability ratio is a power of two; otherwise a
/// tolerant real gcd of the log-ratios (1e-9), with spans below 1e-6
/// reported as nonlattice. A source-level override takes precedence.
/// Equiprobable sources (a single value) report 0.
double lattice_span(const DiscreteSource& src);

/// Cramer's condition: some Renyi entropy of order in (0, 1) is finite.
/// Always true for finite support.
bool cramer_check(const DiscreteSource& src);

}  // namespace vlc

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "vlc/bigfloat.hpp"
#include "vlc/source.hpp"

namespace vlc {

inline constexpr std::uint64_t kDefaultTypeBudget = 10'000'000;

/// One probability level of X^n: every sequence in it has probability
/// weight / denominator, and there are `count` of them.
struct Level {
  mpz_class weight;
  mpz_class count;
};

/// Distinct per-sequence probabilities of X^n, strictly descending, with
/// their multiplicities. This is the decreasing rearrangement of P_{X^n}
/// with ties grouped, so ranks are implicit in the cumulative counts.
///
/// All levels share the denominator d^n where d is the lcm of the pmf
/// denominators; weights are therefore plain integers and equality of
/// levels is exact.
class LevelDistribution {
 public:
  LevelDistribution(DiscreteSource source, int n, mpz_class denominator, std::vector<Level> levels);

  const DiscreteSource& source() const noexcept { return source_; }
  int blocklength() const noexcept { return n_; }
  const mpz_class& denominator() const noexcept { return denominator_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const Level& operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<Level>& levels() const noexcept { return levels_; }

  /// Per-sequence probability of level i.
  mpq_class probability(std::size_t i) const;
  /// Total probability of level i.
  mpq_class mass(std::size_t i) const;
  /// Number of sequences strictly more probable than level i.
  const mpz_class& rank_offset(std::size_t i) const { return rank_offset_[i]; }
  /// Probability (numerator over denominator()) of all levels before i.
  const mpz_class& mass_before(std::size_t i) const { return mass_before_[i]; }
  /// |supp(X)|^n
  const mpz_class& total_count() const noexcept { return rank_offset_.back(); }

  /// -ln and -log2 of the per-sequence probability of level i.
  double info_nats(std::size_t i) const { return info_nats_[i]; }
  double info_bits(std::size_t i) const;

 private:
  DiscreteSource source_;
  int n_;
  mpz_class denominator_;
  std::vector<Level> levels_;
  std::vector<mpz_class> rank_offset_;  // size() + 1 entries
  std::vector<mpz_class> mass_before_;  // size() + 1 entries
  std::vector<double> info_nats_;
};

/// Number of type classes C(n + k - 1, k - 1) for an alphabet of size k.
mpz_class type_class_count(std::size_t alphabet_size, int n);

/// Enumerate all type classes of length-n sequences and merge those with
/// equal probability. Throws BudgetExceeded when the type-class count is
/// above `budget`.
LevelDistribution enumerate_levels(const DiscreteSource& src, int n,
                                   std::uint64_t budget = kDefaultTypeBudget);

/// Minimum size of a set of sequences with probability >= 1 - eps.
/// 0 for eps >= 1.
mpz_class m_star(const LevelDistribution& levels, const mpq_class& eps);

/// Index of the level whose information density is the eps-quantile
/// threshold eta: first level with P{iota <= eta} >= 1 - eps. 0 <= eps < 1.
std::size_t eta_level(const LevelDistribution& levels, const mpq_class& eps);
/// eta in nats.
double eta_quantile(const LevelDistribution& levels, const mpq_class& eps);

/// (# sequences with iota_n < eta, # with iota_n == eta) for eta in nats.
/// A level matches eta when its -ln probability agrees to 1e-12 relative.
std::pair<mpz_class, mpz_class> mu_counts(const LevelDistribution& levels, double eta_nats);
/// Same counts with eta pinned to an exact level.
std::pair<mpz_class, mpz_class> mu_counts_at_level(const LevelDistribution& levels, std::size_t level);

/// Finite real random variable: atoms with strictly increasing values and
/// exact positive probabilities summing to 1.
struct Atom {
  double value;
  mpq_class prob;
};

class ScoredDistribution {
 public:
  explicit ScoredDistribution(std::vector<Atom> atoms);
  /// Sorts by value and merges atoms whose values compare equal.
  static ScoredDistribution from_unsorted(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

/// (eta, beta) with P{Z > eta} + beta P{Z = eta} = eps.
///
/// eps = 0 yields eta = +inf (nothing is cut). eps = 1 yields the smallest
/// atom with beta = 1, the one case where beta leaves [0, 1).
struct CutoffSolution {
  double eta;
  mpq_class beta;
};

CutoffSolution cutoff_solution(const ScoredDistribution& dist, const mpq_class& eps);
/// E[<Z>_eps] = E[Z 1{Z < eta}] + (1 - beta) eta P{Z = eta}.
double cutoff_expectation(const ScoredDistribution& dist, const mpq_class& eps);
/// Same expectation for a caller-chosen solution (eta need not be an atom).
double cutoff_expectation(const ScoredDistribution& dist, const CutoffSolution& cut);

/// Distribution of floor(log2 rank(X^n)).
ScoredDistribution rank_log_floor_dist(const LevelDistribution& levels);

enum class LogBase { bits, nats };

/// Distribution of iota_n = -log P(X^n) in the chosen base, optionally
/// centered by n H(X) (expressed in the same base).
ScoredDistribution info_density_dist(const LevelDistribution& levels, LogBase base, bool centered);

/// Exact L*(eps | X^n) = E[<floor(log2 rank)>_eps]; rational because the
/// codeword lengths are integers.
mpq_class l_star_exact(const LevelDistribution& levels, const mpq_class& eps);
double l_star(const LevelDistribution& levels, const mpq_class& eps);

/// E[<log2 rank(X^n)>_eps], i.e. the same cutoff without the floor.
double log_rank_cutoff_expectation(const LevelDistribution& levels, const mpq_class& eps);
BigFloat log_rank_cutoff_expectation_big(const LevelDistribution& levels, const mpq_class& eps,
                                         mpfr_prec_t prec = working_precision());

/// Transform applied to the step function s -> M*(n, s) before integrating.
enum class MstarTransform {
  log,                 // log2 M*
  log_plus1,           // log2 (M* + 1)
  log_minus1_clamped,  // log2 max(M* - 1, 1)
  ceil_log,            // ceil(log2 M*)
  ceil_log_plus1,      // ceil(log2 (M* + 1))
};

/// int_lo^hi T(M*(n, s)) ds, summed exactly over the breakpoints of M*.
/// Requires 0 <= lo < hi <= 1.
double log_mstar_integral(const LevelDistribution& levels, const mpq_class& lo,
                          const mpq_class& hi, MstarTransform transform);
BigFloat log_mstar_integral_big(const LevelDistribution& levels, const mpq_class& lo, const mpq_class& hi,
                                MstarTransform transform, mpfr_prec_t prec = working_precision());
/// Exact rational value; only for the ceil transforms.
mpq_class log_mstar_integral_exact(const LevelDistribution& levels, const mpq_class& lo,
                                   const mpq_class& hi, MstarTransform transform);

/// inf{z : F_n(z) >= 1 - eps} for the normalized centered sum
/// (iota_n - n H) / sqrt(n V). Needs V > 0 and 0 < eps < 1.
double zeta_quantile(const LevelDistribution& levels, const mpq_class& eps);

/// Sequence-by-sequence computation of (M*, L*) used to cross-check the
/// level-based routines. Holds all |X|^n sequence probabilities sorted in
/// decreasing order; capped at 2^24 sequences.
class BruteForceOracle {
 public:
  static constexpr std::uint64_t kMaxSequences = std::uint64_t{1} << 24;

  BruteForceOracle(const DiscreteSource& src, int n);

  struct Result {
    mpz_class m_star;
    mpq_class l_star;
  };
  Result evaluate(const mpq_class& eps) const;

 private:
  std::vector<mpq_class> sorted_;
};

BruteForceOracle::Result brute_force_oracle(const DiscreteSource& src, int n, const mpq_class& eps);

}  // namespace vlc

#include "vlc/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"

namespace vlc {

// ---------------------------------------------------------------------------
// LevelDistribution

LevelDistribution::LevelDistribution(DiscreteSource source, int n, mpz_class denominator,
                                     std::vector<Level> levels)
    : source_(std::move(source)), n_(n), denominator_(std::move(denominator)), levels_(std::move(levels)) {
  if (n_ < 1) throw DomainError("blocklength must be >= 1");
  if (levels_.empty()) throw DomainError("level distribution is empty");
  rank_offset_.reserve(levels_.size() + 1);
  mass_before_.reserve(levels_.size() + 1);
  rank_offset_.emplace_back(0);
  mass_before_.emplace_back(0);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    if (lv.count < 1 || lv.weight < 1) throw DomainError("levels need positive weight and count");
    if (i > 0 && !(lv.weight < levels_[i - 1].weight)) {
      throw DomainError("levels must be strictly decreasing");
    }
    rank_offset_.push_back(rank_offset_.back() + lv.count);
    mass_before_.push_back(mass_before_.back() + lv.count * lv.weight);
  }
  if (mass_before_.back() != denominator_) throw DomainError("level masses do not sum to 1");
  info_nats_.reserve(levels_.size());
  for (const Level& lv : levels_) info_nats_.push_back(ln_of(mpq_class(denominator_, lv.weight)));
}

mpq_class LevelDistribution::probability(std::size_t i) const {
  mpq_class q(levels_[i].weight, denominator_);
  q.canonicalize();
  return q;
}

mpq_class LevelDistribution::mass(std::size_t i) const {
  mpq_class q(levels_[i].weight * levels_[i].count, denominator_);
  q.canonicalize();
  return q;
}

double LevelDistribution::info_bits(std::size_t i) const {
  return info_nats_[i] / std::numbers::ln2;
}

mpz_class type_class_count(std::size_t alphabet_size, int n) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n) + alphabet_size - 1,
               alphabet_size - 1);
  return out;
}

LevelDistribution enumerate_levels(const DiscreteSource& src, int n, std::uint64_t budget) {
  if (n < 1) throw DomainError("blocklength must be >= 1");
  const std::size_t k = src.size();
  const mpz_class types = type_class_count(k, n);
  if (types > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("type-class enumeration needs " + types.get_str() +
                             " classes, budget is " + std::to_string(budget),
                         types.get_str());
  }

  mpz_class common = 1;
  for (const auto& p : src.probs()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.get_den_mpz_t());
  std::vector<mpz_class> scaled;
  for (const auto& p : src.probs()) scaled.push_back(p.get_num() * (common / p.get_den()));

  // powers[i][j] = scaled[i]^j
  std::vector<std::vector<mpz_class>> powers(k, std::vector<mpz_class>(static_cast<std::size_t>(n) + 1));
  for (std::size_t i = 0; i < k; ++i) {
    powers[i][0] = 1;
    for (int j = 1; j <= n; ++j) powers[i][j] = powers[i][j - 1] * scaled[i];
  }

  std::vector<Level> raw;
  raw.reserve(types.get_ui());
  std::vector<int> counts(k, 0);
  // Depth-first over compositions; `multinomial` carries n! / prod k_i! for
  // the symbols fixed so far, `weight` the matching product of powers.
  std::function<void(std::size_t, int, const mpz_class&, const mpz_class&)> walk =
      [&](std::size_t symbol, int remaining, const mpz_class& multinomial, const mpz_class& weight) {
        if (symbol + 1 == k) {
          raw.push_back({weight * powers[symbol][remaining], multinomial});
          return;
        }
        mpz_class choose;
        for (int c = 0; c <= remaining; ++c) {
          mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(remaining), static_cast<unsigned long>(c));
          walk(symbol + 1, remaining - c, multinomial * choose, weight * powers[symbol][c]);
        }
      };
  walk(0, n, mpz_class(1), mpz_class(1));

  std::sort(raw.begin(), raw.end(), [](const Level& a, const Level& b) { return a.weight > b.weight; });
  std::vector<Level> merged;
  merged.reserve(raw.size());
  for (auto& lv : raw) {
    if (!merged.empty() && merged.back().weight == lv.weight) {
      merged.back().count += lv.count;
    } else {
      merged.push_back(std::move(lv));
    }
  }
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(n));
  return LevelDistribution(src, n, std::move(denominator), std::move(merged));
}

// ---------------------------------------------------------------------------
// M*, eta, mu counts

namespace {

// Scaled target (1 - eps) * D as a rational, with eps in [0, 1].
mpq_class scaled_target(const LevelDistribution& levels, const mpq_class& eps) {
  return (1 - eps) * mpq_class(levels.denominator());
}

void check_unit_interval(const mpq_class& eps, const char* what) {
  if (sgn(eps) < 0 || eps > 1) throw DomainError(std::string(what) + ": eps outside [0, 1]");
}

}  // namespace

mpz_class m_star(const LevelDistribution& levels, const mpq_class& eps) {
  check_unit_interval(eps, "m_star");
  if (eps == 1) return 0;
  const mpq_class target = scaled_target(levels, eps);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const mpz_class& before = levels.mass_before(i);
    if (mpq_class(levels.mass_before(i + 1)) >= target) {
      const mpq_class deficit = target - mpq_class(before);
      return levels.rank_offset(i) + ceil_of(mpq_class(deficit / mpq_class(levels[i].weight)));
    }
  }
  return levels.total_count();
}

std::size_t eta_level(const LevelDistribution& levels, const mpq_class& eps) {
  if (sgn(eps) < 0 || eps >= 1) throw DomainError("eta_level: eps outside [0, 1)");
  const mpq_class target = scaled_target(levels, eps);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (mpq_class(levels.mass_before(i + 1)) >= target) return i;
  }
  return levels.size() - 1;
}

double eta_quantile(const LevelDistribution& levels, const mpq_class& eps) {
  return levels.info_nats(eta_level(levels, eps));
}

std::pair<mpz_class, mpz_class> mu_counts(const LevelDistribution& levels, double eta_nats) {
  mpz_class below = 0;
  mpz_class at = 0;
  const double tol = 1e-12 * std::max(1.0, std::abs(eta_nats));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double v = levels.info_nats(i);
    if (std::abs(v - eta_nats) <= tol) {
      at += levels[i].count;
    } else if (v < eta_nats) {
      below += levels[i].count;
    }
  }
  return {below, at};
}

std::pair<mpz_class, mpz_class> mu_counts_at_level(const LevelDistribution& levels, std::size_t level) {
  if (level >= levels.size()) throw DomainError("mu_counts_at_level: level out of range");
  return {levels.rank_offset(level), levels[level].count};
}

// ---------------------------------------------------------------------------
// Scored distributions and the eps-cutoff

ScoredDistribution::ScoredDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("scored distribution is empty");
  mpq_class total = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    atoms_[i].prob.canonicalize();
    if (sgn(atoms_[i].prob) <= 0) throw DomainError("scored distribution atom with nonpositive probability");
    if (!std::isfinite(atoms_[i].value)) throw DomainError("scored distribution atom with non-finite value");
    if (i > 0 && !(atoms_[i - 1].value < atoms_[i].value)) {
      throw DomainError("scored distribution values must be strictly increasing");
    }
    total += atoms_[i].prob;
  }
  if (total != 1) throw DomainError("scored distribution probabilities do not sum to 1");
}

ScoredDistribution ScoredDistribution::from_unsorted(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  for (auto& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(std::move(a));
    }
  }
  return ScoredDistribution(std::move(merged));
}

namespace {

constexpr std::size_t kNoCut = std::numeric_limits<std::size_t>::max();

struct CutIndex {
  std::size_t index;  // kNoCut when eps == 0
  mpq_class beta;
};

// probs ordered by increasing value. Walks down from the largest value
// until the remaining tail mass would exceed eps.
template <class Probs>
CutIndex locate_cut(const Probs& probs, const mpq_class& eps) {
  if (sgn(eps) < 0 || eps > 1) throw DomainError("cutoff: eps outside [0, 1]");
  if (sgn(eps) == 0) return {kNoCut, 0};
  mpq_class tail = 0;
  for (std::size_t j = probs.size(); j-- > 0;) {
    const mpq_class& p = probs[j];
    if (tail + p > eps) return {j, (eps - tail) / p};
    tail += p;
  }
  return {0, 1};
}

std::vector<mpq_class> probs_of(const ScoredDistribution& dist) {
  std::vector<mpq_class> out;
  out.reserve(dist.size());
  for (const auto& a : dist.atoms()) out.push_back(a.prob);
  return out;
}

}  // namespace

CutoffSolution cutoff_solution(const ScoredDistribution& dist, const mpq_class& eps) {
  const CutIndex cut = locate_cut(probs_of(dist), eps);
  if (cut.index == kNoCut) return {std::numeric_limits<double>::infinity(), 0};
  return {dist.atoms()[cut.index].value, cut.beta};
}

double cutoff_expectation(const ScoredDistribution& dist, const CutoffSolution& cut) {
  double total = 0.0;
  for (const auto& a : dist.atoms()) {
    if (a.value < cut.eta) {
      total += a.value * to_double(a.prob);
    } else if (a.value == cut.eta) {
      total += a.value * to_double(mpq_class((1 - cut.beta) * a.prob));
    }
  }
  return total;
}

double cutoff_expectation(const ScoredDistribution& dist, const mpq_class& eps) {
  return cutoff_expectation(dist, cutoff_solution(dist, eps));
}

namespace {

// P{floor(log2 rank) = k} * D, for k = 0 .. floor(log2 |X|^n).
std::vector<mpz_class> rank_log_floor_numerators(const LevelDistribution& levels) {
  std::vector<mpz_class> out(static_cast<std::size_t>(floor_log2(levels.total_count())) + 1);
  mpz_class pow2;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const mpz_class first = levels.rank_offset(i) + 1;
    const mpz_class last = levels.rank_offset(i + 1);
    const long k_lo = floor_log2(first);
    const long k_hi = floor_log2(last);
    for (long k = k_lo; k <= k_hi; ++k) {
      mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(k));
      const mpz_class lo = std::max(first, pow2);
      const mpz_class hi = std::min(last, mpz_class(2 * pow2 - 1));
      out[static_cast<std::size_t>(k)] += (hi - lo + 1) * levels[i].weight;
    }
  }
  return out;
}

}  // namespace

ScoredDistribution rank_log_floor_dist(const LevelDistribution& levels) {
  const auto numerators = rank_log_floor_numerators(levels);
  std::vector<Atom> atoms;
  atoms.reserve(numerators.size());
  for (std::size_t k = 0; k < numerators.size(); ++k) {
    atoms.push_back({static_cast<double>(k), mpq_class(numerators[k], levels.denominator())});
  }
  return ScoredDistribution(std::move(atoms));
}

ScoredDistribution info_density_dist(const LevelDistribution& levels, LogBase base, bool centered) {
  double shift = 0.0;
  if (centered) {
    const double entropy_bits = info_moments(levels.source()).entropy;
    shift = levels.blocklength() * entropy_bits * (base == LogBase::nats ? std::numbers::ln2 : 1.0);
  }
  std::vector<Atom> atoms;
  atoms.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double v = base == LogBase::nats ? levels.info_nats(i) : levels.info_bits(i);
    atoms.push_back({v - shift, levels.mass(i)});
  }
  return ScoredDistribution::from_unsorted(std::move(atoms));
}

mpq_class l_star_exact(const LevelDistribution& levels, const mpq_class& eps) {
  const auto numerators = rank_log_floor_numerators(levels);
  std::vector<mpq_class> probs;
  probs.reserve(numerators.size());
  for (const auto& num : numerators) {
    mpq_class q(num, levels.denominator());
    q.canonicalize();
    probs.push_back(std::move(q));
  }
  const CutIndex cut = locate_cut(probs, eps);
  const std::size_t full = cut.index == kNoCut ? probs.size() : cut.index;
  mpq_class total = 0;
  for (std::size_t k = 0; k < full; ++k) total += mpq_class(static_cast<long>(k)) * probs[k];
  if (cut.index != kNoCut) {
    total += mpq_class(static_cast<long>(cut.index)) * (1 - cut.beta) * probs[cut.index];
  }
  return total;
}

double l_star(const LevelDistribution& levels, const mpq_class& eps) {
  return to_double(l_star_exact(levels, eps));
}

namespace {

BigFloat big_zero(mpfr_prec_t prec) {
  BigFloat z(prec);
  mpfr_set_zero(z.get(), 1);
  return z;
}

// acc += w * v
void add_scaled(BigFloat& acc, const mpq_class& w, const BigFloat& v) {
  BigFloat term(acc.precision());
  mpfr_mul_q(term.get(), v.get(), w.get_mpq_t(), MPFR_RNDN);
  mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
}

}  // namespace

BigFloat log_rank_cutoff_expectation_big(const LevelDistribution& levels, const mpq_class& eps, mpfr_prec_t prec) {
  check_unit_interval(eps, "log_rank_cutoff_expectation");
  BigFloat total = big_zero(prec);
  if (eps == 1) return total;
  const mpq_class budget = eps * mpq_class(levels.denominator());  // cut mass, scaled by D

  // Walk from the least probable level until the cut mass is placed.
  std::size_t boundary = levels.size();
  mpz_class kept_in_boundary = 0;  // includes the partially kept rank
  mpq_class beta = 0;
  if (sgn(eps) > 0) {
    mpz_class tail = 0;
    for (std::size_t i = levels.size(); i-- > 0;) {
      const mpz_class level_mass = levels[i].count * levels[i].weight;
      if (mpq_class(tail + level_mass) > budget) {
        const mpq_class ranks_cut = (budget - mpq_class(tail)) / mpq_class(levels[i].weight);
        const mpz_class full_cut = floor_of(ranks_cut);
        beta = ranks_cut - mpq_class(full_cut);
        kept_in_boundary = levels[i].count - full_cut;
        boundary = i;
        break;
      }
      tail += level_mass;
    }
  }

  for (std::size_t i = 0; i < boundary; ++i) {
    add_scaled(total, levels.probability(i),
               sum_log2_range_big(mpz_class(levels.rank_offset(i) + 1), levels.rank_offset(i + 1), prec));
  }
  if (boundary < levels.size()) {
    const mpz_class first = levels.rank_offset(boundary) + 1;
    const mpz_class boundary_rank = levels.rank_offset(boundary) + kept_in_boundary;
    const mpq_class p = levels.probability(boundary);
    add_scaled(total, p, sum_log2_range_big(first, mpz_class(boundary_rank - 1), prec));
    add_scaled(total, mpq_class((1 - beta) * p), log2_big(boundary_rank, prec));
  }
  return total;
}

double log_rank_cutoff_expectation(const LevelDistribution& levels, const mpq_class& eps) {
  return log_rank_cutoff_expectation_big(levels, eps, working_precision()).to_double();
}

// ---------------------------------------------------------------------------
// Integrals of transforms of s -> M*(n, s)

namespace {

bool is_ceil_transform(MstarTransform t) {
  return t == MstarTransform::ceil_log || t == MstarTransform::ceil_log_plus1;
}

BigFloat transform_value_big(MstarTransform t, const mpz_class& rank, mpfr_prec_t prec) {
  switch (t) {
    case MstarTransform::log:
      return log2_big(rank, prec);
    case MstarTransform::log_plus1:
      return log2_big(mpz_class(rank + 1), prec);
    case MstarTransform::log_minus1_clamped:
      return rank <= 2 ? big_zero(prec) : log2_big(mpz_class(rank - 1), prec);
    case MstarTransform::ceil_log:
    case MstarTransform::ceil_log_plus1:
      break;
  }
  throw DomainError("ceil transforms are evaluated exactly");
}

mpz_class transform_value_exact(MstarTransform t, const mpz_class& rank) {
  return t == MstarTransform::ceil_log ? mpz_class(ceil_log2(rank)) : mpz_class(ceil_log2(mpz_class(rank + 1)));
}

BigFloat transform_range_sum_big(MstarTransform t, const mpz_class& first, const mpz_class& last,
                                 mpfr_prec_t prec) {
  switch (t) {
    case MstarTransform::log:
      return sum_log2_range_big(first, last, prec);
    case MstarTransform::log_plus1:
      return sum_log2_range_big(mpz_class(first + 1), mpz_class(last + 1), prec);
    case MstarTransform::log_minus1_clamped: {
      const mpz_class lo = first - 1 < 1 ? mpz_class(1) : mpz_class(first - 1);
      return sum_log2_range_big(lo, mpz_class(last - 1), prec);
    }
    case MstarTransform::ceil_log:
    case MstarTransform::ceil_log_plus1:
      break;
  }
  throw DomainError("ceil transforms are evaluated exactly");
}

mpz_class transform_range_sum_exact(MstarTransform t, const mpz_class& first, const mpz_class& last) {
  return t == MstarTransform::ceil_log ? sum_ceil_log2_range(first, last)
                                       : sum_ceil_log2_range(mpz_class(first + 1), mpz_class(last + 1));
}

// Ranks of one level touched by [lo, hi]: a partial rank on either side
// and a run of fully covered ranks, as (rank, covered fraction) pairs plus
// an inclusive [first, last] run.
struct LevelSlice {
  std::vector<std::pair<mpz_class, mpq_class>> partial;
  mpz_class full_first;
  mpz_class full_last;  // full_last < full_first when the run is empty
};

// Rank j (1-based within the level) holds M* = offset + j on the s-interval
// [1 - C - j p, 1 - C - (j - 1) p), where C is the mass of earlier levels.
std::optional<LevelSlice> slice_level(const LevelDistribution& levels, std::size_t i, const mpq_class& lo,
                                      const mpq_class& hi) {
  const mpq_class p = levels.probability(i);
  const mpq_class top = 1 - mpq_class(levels.mass_before(i), levels.denominator());
  const mpq_class count(levels[i].count);
  mpq_class a = (top - hi) / p;
  mpq_class b = (top - lo) / p;
  if (sgn(a) < 0) a = 0;
  if (b > count) b = count;
  if (!(a < b)) return std::nullopt;

  const mpz_class& offset = levels.rank_offset(i);
  const mpz_class ja = floor_of(a);
  const mpz_class jb = floor_of(b);
  LevelSlice slice;
  slice.full_first = 1;
  slice.full_last = 0;
  if (ja == jb) {
    slice.partial.emplace_back(offset + ja + 1, b - a);
    return slice;
  }
  mpz_class full_first = ja + 1;
  if (a > mpq_class(ja)) {
    slice.partial.emplace_back(offset + ja + 1, mpq_class(ja + 1) - a);
    full_first = ja + 2;
  }
  slice.full_first = offset + full_first;
  slice.full_last = offset + jb;
  if (b > mpq_class(jb)) slice.partial.emplace_back(offset + jb + 1, b - mpq_class(jb));
  return slice;
}

void check_interval(const mpq_class& lo, const mpq_class& hi) {
  if (sgn(lo) < 0 || hi > 1 || !(lo < hi)) throw DomainError("log_mstar_integral: need 0 <= lo < hi <= 1");
}

}  // namespace

BigFloat log_mstar_integral_big(const LevelDistribution& levels, const mpq_class& lo, const mpq_class& hi,
                                MstarTransform transform, mpfr_prec_t prec) {
  check_interval(lo, hi);
  if (is_ceil_transform(transform)) return BigFloat::from(log_mstar_integral_exact(levels, lo, hi, transform), prec);
  BigFloat total = big_zero(prec);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto slice = slice_level(levels, i, lo, hi);
    if (!slice) continue;
    const mpq_class p = levels.probability(i);
    for (const auto& [rank, fraction] : slice->partial) {
      add_scaled(total, mpq_class(fraction * p), transform_value_big(transform, rank, prec));
    }
    if (slice->full_first <= slice->full_last) {
      add_scaled(total, p, transform_range_sum_big(transform, slice->full_first, slice->full_last, prec));
    }
  }
  return total;
}

double log_mstar_integral(const LevelDistribution& levels, const mpq_class& lo, const mpq_class& hi,
                          MstarTransform transform) {
  return log_mstar_integral_big(levels, lo, hi, transform, working_precision()).to_double();
}

mpq_class log_mstar_integral_exact(const LevelDistribution& levels, const mpq_class& lo, const mpq_class& hi,
                                   MstarTransform transform) {
  check_interval(lo, hi);
  if (!is_ceil_transform(transform)) {
    throw DomainError("log_mstar_integral_exact: only the ceil transforms are rational");
  }
  mpq_class total = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto slice = slice_level(levels, i, lo, hi);
    if (!slice) continue;
    const mpq_class p = levels.probability(i);
    for (const auto& [rank, fraction] : slice->partial) {
      total += fraction * p * mpq_class(transform_value_exact(transform, rank));
    }
    if (slice->full_first <= slice->full_last) {
      total += p * mpq_class(transform_range_sum_exact(transform, slice->full_first, slice->full_last));
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

double zeta_quantile(const LevelDistribution& levels, const mpq_class& eps) {
  if (!(sgn(eps) > 0 && eps < 1)) throw DomainError("zeta_quantile: eps outside (0, 1)");
  const InfoMoments m = info_moments(levels.source());
  if (!(m.varentropy > 0.0)) throw DomainError("zeta_quantile: varentropy is zero");
  const std::size_t i = eta_level(levels, eps);
  const double n = levels.blocklength();
  return (levels.info_bits(i) - n * m.entropy) / std::sqrt(n * m.varentropy);
}

// ---------------------------------------------------------------------------
// Brute-force oracle

BruteForceOracle::BruteForceOracle(const DiscreteSource& src, int n) {
  if (n < 1) throw DomainError("blocklength must be >= 1");
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), src.size(), static_cast<unsigned long>(n));
  if (total > mpz_class(std::to_string(kMaxSequences))) {
    throw BudgetExceeded("brute-force oracle needs " + total.get_str() + " sequences (cap 2^24)",
                         total.get_str());
  }
  sorted_.reserve(total.get_ui());
  // Odometer over all sequences; probability as a plain product of the pmf.
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  const auto& pmf = src.probs();
  while (true) {
    mpq_class prob = 1;
    for (std::size_t d : digits) prob *= pmf[d];
    sorted_.push_back(std::move(prob));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == pmf.size()) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
}

BruteForceOracle::Result BruteForceOracle::evaluate(const mpq_class& eps) const {
  if (sgn(eps) < 0 || eps > 1) throw DomainError("oracle: eps outside [0, 1]");
  Result r;
  // M*: smallest prefix of the sorted sequences with mass >= 1 - eps.
  const mpq_class need = 1 - eps;
  mpq_class acc = 0;
  std::size_t taken = 0;
  while (acc < need) acc += sorted_[taken++];
  r.m_star = static_cast<unsigned long>(taken);

  // L*: sequence i (1-based) gets a codeword of floor(log2 i) bits; the
  // eps mass with the longest codewords is dropped, the boundary sequence
  // partially.
  mpq_class to_drop = eps;
  r.l_star = 0;
  for (std::size_t idx = sorted_.size(); idx-- > 0;) {
    const mpq_class& p = sorted_[idx];
    mpq_class kept = p;
    if (sgn(to_drop) > 0) {
      if (to_drop >= p) {
        to_drop -= p;
        continue;
      }
      kept = p - to_drop;
      to_drop = 0;
    }
    const auto length = static_cast<long>(std::bit_width(idx + 1)) - 1;
    r.l_star += kept * length;
  }
  return r;
}

BruteForceOracle::Result brute_force_oracle(const DiscreteSource& src, int n, const mpq_class& eps) {
  return BruteForceOracle(src, n).evaluate(eps);
}

}  // namespace vlc

#include <doctest.h>

#include <cmath>

#include "vlc/error.hpp"
#include "vlc/exact.hpp"
#include "vlc/gaussian.hpp"
#include "vlc/md_expansion.hpp"

using namespace vlc;
using namespace vlc::md;

namespace {

const auto kB310 = DiscreteSource::bernoulli(mpq_class(3, 10));
const auto kSym = DiscreteSource::from_strings({"1/2", "1/4", "1/4"});

// 1 - F_n(z) for the normalized centered information density.
double exact_upper_tail(const LevelDistribution& lv, double z) {
  const auto m = info_moments(lv.source());
  const double n = lv.blocklength();
  double tail = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    if ((lv.info_bits(i) - n * m.entropy) / std::sqrt(n * m.varentropy) > z) tail += to_double(lv.mass(i));
  }
  return tail;
}

}  // namespace

TEST_CASE("refined tail") {
  const auto m = info_moments(kB310);
  auto t = refined_md_tail(m, 100, 0.0, TailSide::upper);
  CHECK(t.value == 0.5);
  CHECK(t.correction == 1.0);
  t = refined_md_tail(m, 100, 0.0, TailSide::lower);
  CHECK(t.value == 0.5);

  const auto sym = info_moments(kSym);
  for (double z : {0.5, 1.0, 2.0, 3.5}) {
    CHECK(refined_md_tail(sym, 50, z, TailSide::upper).value == doctest::Approx(gauss::ccdf(z)).epsilon(1e-14));
    CHECK(refined_md_tail(sym, 50, z, TailSide::lower).value == doctest::Approx(gauss::cdf(-z)).epsilon(1e-14));
    CHECK(std::abs(refined_md_tail(sym, 50, z, TailSide::upper).correction - 1.0) < 1e-14);
  }

  const int n = 10000;
  const auto lv = enumerate_levels(kB310, n);
  const auto approx = refined_md_tail(m, n, 2.0, TailSide::upper);
  CHECK(std::abs(exact_upper_tail(lv, 2.0) - approx.value) <= 10 * approx.bound);
  CHECK(approx.in_regime);
  CHECK_FALSE(refined_md_tail(m, 64, 5.0, TailSide::upper).in_regime);
  CHECK_THROWS_AS(refined_md_tail(m, 100, -1.0, TailSide::upper), DomainError);
}

TEST_CASE("quantile inversion") {
  const auto m = info_moments(kB310);
  auto q = quantile_inversion(m, 100, 0.5, InversionSide::lower_eq_md1);
  CHECK(q.value == 0.5);
  CHECK(q.correction == 1.0);

  REQUIRE(m.skew_or_throw() > 0.0);
  CHECK(quantile_inversion(m, 100, 0.01, InversionSide::lower_eq_md1).correction < 1.0);
  CHECK(quantile_inversion(m, 100, 0.01, InversionSide::upper_eq_md2).correction > 1.0);
  CHECK_THROWS_AS(quantile_inversion(m, 100, 0.6, InversionSide::lower_eq_md1), DomainError);
  CHECK_THROWS_AS(quantile_inversion(m, 100, 0.0, InversionSide::lower_eq_md1), DomainError);

  // The skewness factor fades with n.
  CHECK(std::abs(quantile_inversion(m, 100000000, 0.01, InversionSide::upper_eq_md2).value / 0.01 - 1) < 1e-3);

  // Exact quantile at n = 10^4, eps = 10^-2.
  const int n = 10000;
  const double e = 0.01;
  const auto lv = enumerate_levels(kB310, n);
  const double zeta = zeta_quantile(lv, mpq_class(99, 100));
  const auto approx = quantile_inversion(m, n, e, InversionSide::upper_eq_md2);
  CHECK(std::abs(gauss::cdf(zeta) - approx.value) <= 10 * e * approx.bound);
  const double zeta_up = zeta_quantile(lv, mpq_class(1, 100));
  const auto approx_up = quantile_inversion(m, n, e, InversionSide::lower_eq_md1);
  CHECK(std::abs(gauss::ccdf(zeta_up) - approx_up.value) <= 10 * e * approx_up.bound);
}

TEST_CASE("tail and inversion agree to first order") {
  // Linearizing the tail correction exp(S z^3 / sqrt n) at z = -Phi^-1(eps)
  // gives the inversion factor 1 - S Phi^-1(eps)^3 / sqrt n.
  const auto m = info_moments(kB310);
  for (int n : {1000000, 100000000}) {
    for (double e : {0.05, 0.01}) {
      const double z = -gauss::quantile(e);
      const double tail_factor = refined_md_tail(m, n, z, TailSide::upper).correction;
      const double inv_factor = quantile_inversion(m, n, e, InversionSide::upper_eq_md2).correction;
      const double first_order = std::log(tail_factor);
      CHECK((inv_factor - 1) == doctest::Approx(first_order).epsilon(1e-2));
    }
  }
}

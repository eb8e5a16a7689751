#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"
#include "vlc/exact.hpp"
#include "vlc/large_deviations.hpp"

using namespace vlc;
using namespace vlc::ld;

namespace {

const auto kB14 = DiscreteSource::bernoulli(mpq_class(1, 4));
const auto kThree = DiscreteSource::from_strings({"1/2", "1/3", "1/6"});
const auto kSym = DiscreteSource::from_strings({"1/2", "1/4", "1/4"});

// Central differences of Lambda.
std::pair<double, double> numeric_derivatives(const DiscreteSource& src, double s) {
  const double h = 1e-4;
  const double f0 = cgf(src, s).lambda;
  const double fp = cgf(src, s + h).lambda;
  const double fm = cgf(src, s - h).lambda;
  return {(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

}  // namespace

TEST_CASE("cumulant generating function") {
  for (const auto& src : {kB14, kThree, kSym}) {
    const auto m = info_moments(src);
    const auto c = cgf(src, 1.0);
    CHECK(std::abs(c.lambda) < 1e-15);
    CHECK(c.d1 == doctest::Approx(-std::numbers::ln2 * m.entropy).epsilon(1e-13));
    CHECK(c.d2 == doctest::Approx(std::numbers::ln2 * std::numbers::ln2 * m.varentropy).epsilon(1e-12));
    CHECK(cgf(src, 0.0).lambda == doctest::Approx(std::log(static_cast<double>(src.size()))));
    for (double s = -3.0; s <= 3.0; s += 0.25) {
      const auto cs = cgf(src, s);
      const auto [d1, d2] = numeric_derivatives(src, s);
      CHECK(cs.d1 == doctest::Approx(d1).epsilon(1e-7));
      CHECK(cs.d2 == doctest::Approx(d2).epsilon(1e-4));
      CHECK(cs.d2 > 0.0);
    }
  }
  // Extreme tilts stay finite.
  CHECK(std::isfinite(cgf(kThree, 800.0).lambda));
  CHECK(std::isfinite(cgf(kThree, -800.0).d1));
}

TEST_CASE("rate function") {
  const auto m = info_moments(kThree);
  const double a1 = cgf(kThree, 1.0).d1;
  auto r = rate_function(kThree, a1);
  CHECK(r.s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.rate == doctest::Approx(-std::numbers::ln2 * m.entropy).epsilon(1e-12));
  CHECK(r.rate == doctest::Approx(a1).epsilon(1e-12));

  const double a0 = cgf(kThree, 0.0).d1;
  r = rate_function(kThree, a0);
  CHECK(std::abs(r.s) < 1e-10);
  CHECK(r.rate == doctest::Approx(-std::log(3.0)).epsilon(1e-12));

  r = rate_function(kThree, cgf(kThree, 0.7).d1);
  CHECK(r.s == doctest::Approx(0.7).epsilon(1e-10));

  std::mt19937_64 rng(5);
  const double lo = std::log(1.0 / 6.0);
  const double hi = std::log(0.5);
  std::uniform_real_distribution<double> dist(lo + 1e-3, hi - 1e-3);
  for (int i = 0; i < 100; ++i) {
    const double a = dist(rng);
    const auto sol = rate_function(kThree, a);
    CHECK(std::abs(cgf(kThree, sol.s).d1 - a) < 1e-12);
  }
  CHECK_THROWS_AS(rate_function(kThree, hi + 0.1), DomainError);
  CHECK_THROWS_AS(rate_function(kThree, lo), DomainError);
}

TEST_CASE("lattice prefactor") {
  CHECK(upsilon(kThree, 1.0) == 1.0);
  CHECK(upsilon(kSym, 1.0) == doctest::Approx(std::numbers::ln2));
  CHECK(upsilon_with_span(1e-8, 2.0) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK_THROWS_AS(upsilon(kSym, 0.0), DomainError);
}

TEST_CASE("Bahadur-Rao") {
  const auto m = info_moments(kSym);
  const int n = 200;
  const auto br = bahadur_rao(kSym, n, 1.0);
  CHECK(br.log_value == doctest::Approx(-br.exponent_k + br.prefactor_log));
  CHECK(br.exponent_k == doctest::Approx(-n * std::numbers::ln2 * m.entropy));
  CHECK(br.prefactor_log == doctest::Approx(-0.5 * std::log(std::numbers::pi * n / 2)));

  auto error_at = [&](int blocklength) {
    const auto lv = enumerate_levels(kSym, blocklength);
    const auto [below, at] = mu_counts(lv, -blocklength * cgf(kSym, 1.0).d1);
    return std::abs(ln_of(below) - bahadur_rao(kSym, blocklength, 1.0).log_value);
  };
  const double e100 = error_at(100);
  const double e300 = error_at(300);
  const double e500 = error_at(500);
  CHECK(e300 < e100);
  CHECK(e500 < e300);
  CHECK(e500 < 0.1);

  // Atom form: sequences exactly at the threshold.
  const auto lv = enumerate_levels(kSym, n);
  const auto [below, at] = mu_counts(lv, -n * cgf(kSym, 1.0).d1);
  const auto atom = bahadur_rao(kSym, n, 1.0, BrKind::atom);
  CHECK(std::abs(ln_of(at) - atom.log_value) < 0.05);
  CHECK_THROWS_AS(bahadur_rao(kThree, n, 1.0, BrKind::atom), DomainError);
  CHECK(bahadur_rao(kThree, n, 1.0).prefactor_log ==
        doctest::Approx(-0.5 * std::log(2 * std::numbers::pi * n * cgf(kThree, 1.0).d2)));
  CHECK_THROWS_AS(bahadur_rao(kSym, n, -1.0), DomainError);
}

TEST_CASE("perturbed exponent") {
  const int n = 300;
  const auto base = bahadur_rao(kThree, n, 1.0);
  const auto zero = sld_perturbed(kThree, n, 1.0, 0.0);
  CHECK(zero.exponent_k == base.exponent_k);
  CHECK(zero.log_value == base.log_value);
  double prev = zero.exponent_k;
  for (double a = 0.5; a < 20; a += 0.5) {
    const auto p = sld_perturbed(kThree, n, 1.0, a);
    CHECK(p.exponent_k > prev);
    CHECK(p.in_regime);
    prev = p.exponent_k;
  }
  CHECK_FALSE(sld_perturbed(kThree, n, 1.0, std::pow(n, 0.95)).in_regime);

  // With a_n = sqrt(n Lambda'') Phi^-1(eps) the perturbation is the
  // Gaussian exponent: s a_n + a_n^2 / (2 n Lambda'') = a_n + z^2 / 2.
  const double d2 = cgf(kThree, 1.0).d2;
  const double z = -2.5;
  const double a_n = std::sqrt(n * d2) * z;
  const auto p = sld_perturbed(kThree, n, 1.0, a_n);
  CHECK(p.exponent_k - base.exponent_k == doctest::Approx(a_n + z * z / 2));
}

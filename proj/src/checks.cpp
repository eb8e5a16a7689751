#include "vlc/checks.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"
#include "vlc/exact.hpp"
#include "vlc/gaussian.hpp"
#include "vlc/large_deviations.hpp"

namespace vlc::checks {

using nlohmann::json;

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("ls_slope needs two or more paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("ls_slope: x values are all equal");
  return sxy / sxx;
}

std::vector<int> int_range(int lo, int hi, int step) {
  if (step < 1) throw DomainError("range step must be positive");
  std::vector<int> out;
  for (int v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

std::vector<SourceCase> oracle_sources() {
  return {{"Bernoulli(3/10)", DiscreteSource::bernoulli(mpq_class(3, 10))},
          {"Bernoulli(1/4)", DiscreteSource::bernoulli(mpq_class(1, 4))},
          {"{1/2, 1/3, 1/6}", DiscreteSource::from_strings({"1/2", "1/3", "1/6"})}};
}

std::vector<SourceCase> binary_sources() {
  auto all = oracle_sources();
  all.pop_back();
  return all;
}

namespace {

std::string where(const std::string& label, int n, const mpq_class& eps) {
  return label + " n=" + std::to_string(n) + " eps=" + format_rational(eps);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

CheckOutcome oracle_equality(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                             const std::vector<mpq_class>& eps) {
  CheckOutcome out{"oracle", true, "", json::object()};
  int compared = 0;
  json failures = json::array();
  for (const auto& sc : sources) {
    for (int n : ns) {
      const auto levels = enumerate_levels(sc.source, n);
      const BruteForceOracle oracle(sc.source, n);
      for (const auto& e : eps) {
        const auto expected = oracle.evaluate(e);
        const mpz_class m = m_star(levels, e);
        const mpq_class l = l_star_exact(levels, e);
        ++compared;
        if (m != expected.m_star || l != expected.l_star) {
          out.passed = false;
          failures.push_back(where(sc.label, n, e) + ": M*=" + m.get_str() + " vs " + expected.m_star.get_str() +
                             ", L*=" + format_rational(l) + " vs " + format_rational(expected.l_star));
        }
      }
    }
  }
  out.metrics = {{"cases", compared}, {"failures", failures}};
  out.detail = out.passed ? std::to_string(compared) + " (source, n, eps) cases match exactly"
                          : std::to_string(failures.size()) + " of " + std::to_string(compared) + " cases differ";
  return out;
}

CheckOutcome sandwich(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                      const std::vector<mpq_class>& eps) {
  CheckOutcome out{"sandwich", true, "", json::object()};
  double min_lower_gap = std::numeric_limits<double>::infinity();
  double min_upper_gap = std::numeric_limits<double>::infinity();
  int compared = 0;
  int skipped = 0;
  json failures = json::array();
  for (const auto& sc : sources) {
    for (int n : ns) {
      const auto levels = enumerate_levels(sc.source, n);
      const mpq_class top = levels.probability(0);  // 2^{-n H_inf}
      const mpq_class hi = 1 - top;
      // The gaps are of order `top`; resolve them well below that.
      const auto prec = static_cast<mpfr_prec_t>(working_precision() + mpz_sizeinbase(top.get_den_mpz_t(), 2) + 64);
      for (const auto& e : eps) {
        // Past 1 - top everything is cut and the bounds collapse to 0.
        if (!(e < hi)) {
          ++skipped;
          continue;
        }
        const mpz_class m = m_star(levels, e);
        const BigFloat middle = log_rank_cutoff_expectation_big(levels, e, prec);
        BigFloat lower = log_mstar_integral_big(levels, e, hi, MstarTransform::log_minus1_clamped, prec);
        BigFloat upper = log_mstar_integral_big(levels, e, hi, MstarTransform::log_plus1, prec);
        BigFloat term(prec);
        if (m > 2) {
          mpfr_mul_q(term.get(), log2_big(mpz_class(m - 1), prec).get(), top.get_mpq_t(), MPFR_RNDN);
          mpfr_sub(lower.get(), lower.get(), term.get(), MPFR_RNDN);
        }
        mpfr_mul_q(term.get(), log2_big(mpz_class(m + 1), prec).get(), top.get_mpq_t(), MPFR_RNDN);
        mpfr_add(upper.get(), upper.get(), term.get(), MPFR_RNDN);

        BigFloat gap_lo(prec);
        BigFloat gap_hi(prec);
        mpfr_sub(gap_lo.get(), middle.get(), lower.get(), MPFR_RNDN);
        mpfr_sub(gap_hi.get(), upper.get(), middle.get(), MPFR_RNDN);
        ++compared;
        min_lower_gap = std::min(min_lower_gap, gap_lo.to_double());
        min_upper_gap = std::min(min_upper_gap, gap_hi.to_double());
        if (mpfr_sgn(gap_lo.get()) <= 0 || mpfr_sgn(gap_hi.get()) <= 0) {
          out.passed = false;
          failures.push_back(where(sc.label, n, e) + ": gaps " + fmt(gap_lo.to_double()) + ", " +
                             fmt(gap_hi.to_double()));
        }
      }
    }
  }
  out.metrics = {{"cases", compared},
                 {"skipped_all_cut", skipped},
                 {"min_lower_gap", min_lower_gap},
                 {"min_upper_gap", min_upper_gap},
                 {"failures", failures}};
  out.detail = out.passed ? std::to_string(compared) + " cases strictly inside (" + std::to_string(skipped) +
                                " with eps >= 1 - 2^-nHinf skipped), min gaps " + fmt(min_lower_gap) + " / " +
                                fmt(min_upper_gap)
                          : std::to_string(failures.size()) + " of " + std::to_string(compared) + " cases violate";
  return out;
}

CheckOutcome one_shot(const std::vector<SourceCase>& sources, const std::vector<int>& ns,
                      const std::vector<mpq_class>& eps, double tol) {
  CheckOutcome out{"one-shot", true, "", json::object()};
  double worst = -std::numeric_limits<double>::infinity();
  int compared = 0;
  json failures = json::array();
  for (const auto& sc : sources) {
    const double entropy = info_moments(sc.source).entropy;
    for (int n : ns) {
      const auto levels = enumerate_levels(sc.source, n);
      const auto info = info_density_dist(levels, LogBase::bits, false);
      for (const auto& e : eps) {
        const double upper = cutoff_expectation(info, e);
        const double lower = upper - std::log2(1.0 + n * entropy) - std::numbers::log2e;
        const double l = l_star(levels, e);
        const double violation = std::max(lower - l, l - upper);
        worst = std::max(worst, violation);
        ++compared;
        if (violation > tol) {
          out.passed = false;
          failures.push_back(where(sc.label, n, e) + ": " + fmt(lower) + " <= " + fmt(l) + " <= " + fmt(upper));
        }
      }
    }
  }
  out.metrics = {{"cases", compared}, {"worst_violation_bits", worst}, {"tolerance", tol}, {"failures", failures}};
  out.detail = out.passed ? std::to_string(compared) + " cases within bounds, worst signed violation " + fmt(worst)
                          : std::to_string(failures.size()) + " of " + std::to_string(compared) + " cases violate";
  return out;
}

CheckOutcome sv_identity(const std::vector<SourceCase>& sources, const std::vector<int>& ns) {
  CheckOutcome out{"sv-identity", true, "", json::object()};
  int compared = 0;
  json failures = json::array();
  for (const auto& sc : sources) {
    for (int n : ns) {
      const auto levels = enumerate_levels(sc.source, n);
      const mpq_class lhs = l_star_exact(levels, 0);
      const mpq_class rhs = log_mstar_integral_exact(levels, 0, 1, MstarTransform::ceil_log_plus1) - 1;
      ++compared;
      if (lhs != rhs) {
        out.passed = false;
        failures.push_back(sc.label + " n=" + std::to_string(n) + ": " + format_rational(lhs) + " vs " +
                           format_rational(rhs));
      }
    }
  }
  out.metrics = {{"cases", compared}, {"failures", failures}};
  out.detail = out.passed ? std::to_string(compared) + " (source, n) cases equal as rationals"
                          : std::to_string(failures.size()) + " of " + std::to_string(compared) + " cases differ";
  return out;
}

namespace {

std::vector<double> log2_grid(const std::vector<int>& ns) {
  std::vector<double> x;
  x.reserve(ns.size());
  for (int n : ns) x.push_back(std::log2(static_cast<double>(n)));
  return x;
}

}  // namespace

CheckOutcome third_order_slopes(const DiscreteSource& src, const std::vector<int>& ns,
                                const std::vector<mpq_class>& eps) {
  CheckOutcome out{"third-order", true, "", json::object()};
  const auto m = info_moments(src);
  const auto x = log2_grid(ns);
  std::vector<std::vector<double>> rem2(eps.size());
  std::vector<std::vector<double>> rem3(eps.size());
  for (int n : ns) {
    const auto levels = enumerate_levels(src, n);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double e = to_double(eps[i]);
      const double l = l_star(levels, eps[i]);
      rem2[i].push_back(l - asym::vl_second_order(m, n, e));
      rem3[i].push_back(l - asym::vl_third_order(m, n, e));
    }
  }
  json rows = json::array();
  std::ostringstream detail;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = to_double(eps[i]);
    const double s3 = ls_slope(x, rem3[i]);
    const double s2 = ls_slope(x, rem2[i]);
    const double target = -(1.0 - e) / 2.0;
    const bool ok = std::abs(s3) < 0.05 && std::abs(s2 - target) < 0.05;
    out.passed = out.passed && ok;
    rows.push_back({{"eps", format_rational(eps[i])},
                    {"slope_rem3", s3},
                    {"slope_rem2", s2},
                    {"rem2_target", target},
                    {"passed", ok}});
    detail << (i ? "; " : "") << "eps=" << format_rational(eps[i]) << " rem3 slope " << fmt(s3) << ", rem2 slope "
           << fmt(s2) << " (target " << fmt(target) << ")";
  }
  out.metrics = {{"rows", rows}};
  out.detail = detail.str();
  return out;
}

CheckOutcome zero_error_slope(const DiscreteSource& src, const std::vector<int>& ns) {
  CheckOutcome out{"zero-error", true, "", json::object()};
  const auto m = info_moments(src);
  const auto x = log2_grid(ns);
  std::vector<double> rem;
  for (int n : ns) {
    const auto levels = enumerate_levels(src, n);
    rem.push_back(l_star(levels, 0) - asym::vl_zero_error(m, n));
  }
  const double slope = ls_slope(x, rem);
  out.passed = std::abs(slope) < 0.05;
  out.metrics = {{"slope", slope}, {"remainders", rem}};
  out.detail = "slope " + fmt(slope);
  return out;
}

CheckOutcome md_block(const DiscreteSource& src, const std::vector<int>& ns) {
  CheckOutcome out{"md-block", false, "", json::object()};
  const auto m = info_moments(src);
  const auto x = log2_grid(ns);
  const std::vector<asym::MdConvention> conventions = {
      asym::MdConvention::bits_paper, asym::MdConvention::nats_converted, asym::MdConvention::dimensional};
  const std::vector<std::string> sides = {"1/n", "1-1/n"};
  // rem[convention][side][n]
  std::vector<std::vector<std::vector<double>>> rem(conventions.size(), std::vector<std::vector<double>>(2));
  for (int n : ns) {
    const auto levels = enumerate_levels(src, n);
    for (int side = 0; side < 2; ++side) {
      const mpq_class e = side == 0 ? mpq_class(1, n) : mpq_class(n - 1, n);
      const double exact = log2_of(m_star(levels, e));
      for (std::size_t c = 0; c < conventions.size(); ++c) {
        rem[c][side].push_back(exact - asym::fl_md_expansion(m, n, to_double(e), conventions[c]));
      }
    }
  }
  json report = json::object();
  std::vector<double> worst_slope(conventions.size());
  std::vector<bool> ok(conventions.size());
  for (std::size_t c = 0; c < conventions.size(); ++c) {
    json per_side = json::object();
    bool all_ok = true;
    double worst = 0.0;
    for (int side = 0; side < 2; ++side) {
      const double slope = ls_slope(x, rem[c][side]);
      double max_abs = 0.0;
      for (double r : rem[c][side]) max_abs = std::max(max_abs, std::abs(r));
      const bool side_ok = std::abs(slope) < 0.1 && max_abs < 5.0;
      all_ok = all_ok && side_ok;
      worst = std::max(worst, std::abs(slope));
      per_side[sides[side]] = {{"slope", slope}, {"max_abs_remainder", max_abs}, {"passed", side_ok}};
    }
    worst_slope[c] = worst;
    ok[c] = all_ok;
    report[asym::to_string(conventions[c])] = per_side;
  }
  // Selection is among the two published conventions only.
  const std::size_t selected = worst_slope[1] < worst_slope[0] ? 1 : 0;
  out.passed = ok[selected];
  out.metrics = {{"selected", asym::to_string(conventions[selected])}, {"conventions", report}};
  std::ostringstream detail;
  detail << "selected " << asym::to_string(conventions[selected]);
  for (std::size_t c = 0; c < conventions.size(); ++c) {
    detail << "; " << asym::to_string(conventions[c]) << " slopes "
           << fmt(report[asym::to_string(conventions[c])]["1/n"]["slope"].get<double>()) << " / "
           << fmt(report[asym::to_string(conventions[c])]["1-1/n"]["slope"].get<double>())
           << (ok[c] ? " ok" : " fails");
  }
  out.detail = detail.str();
  return out;
}

CheckOutcome md_inversion(const DiscreteSource& src, const std::vector<int>& ns) {
  CheckOutcome out{"md-inversion", true, "", json::object()};
  const auto m = info_moments(src);
  const double skew = m.skew_or_throw();
  json rows = json::array();
  std::ostringstream detail;
  for (int n : ns) {
    const auto levels = enumerate_levels(src, n);
    const mpq_class e(1, n);
    const double eps = to_double(e);
    const double zeta = zeta_quantile(levels, mpq_class(1 - e));
    const double z = gauss::quantile(eps);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double gap = std::abs(gauss::cdf(zeta) / eps - (1.0 - skew * z * z * z / root_n));
    const double bound = 10.0 * std::abs(z) / root_n;
    const bool ok = gap <= bound;
    out.passed = out.passed && ok;
    rows.push_back({{"n", n}, {"zeta", zeta}, {"gap", gap}, {"bound", bound}, {"passed", ok}});
    detail << (rows.size() > 1 ? "; " : "") << "n=" << n << " gap " << fmt(gap) << " <= " << fmt(bound);
  }
  out.metrics = {{"rows", rows}};
  out.detail = detail.str();
  return out;
}

CheckOutcome bahadur_rao(const DiscreteSource& src, int n_small, int n_large) {
  CheckOutcome out{"bahadur-rao", false, "", json::object()};
  auto error_at = [&](int n) {
    const auto levels = enumerate_levels(src, n);
    const double threshold = -n * ld::cgf(src, 1.0).d1;
    const auto [below, at] = mu_counts(levels, threshold);
    if (below == 0) throw DomainError("bahadur_rao check: no sequences below the threshold");
    return std::abs(ln_of(below) - ld::bahadur_rao(src, n, 1.0).log_value);
  };
  const double small = error_at(n_small);
  const double large = error_at(n_large);
  out.passed = large < 0.1 && large < small;
  out.metrics = {{"n_small", n_small}, {"n_large", n_large}, {"error_small", small}, {"error_large", large}};
  out.detail = "error " + fmt(small) + " nats at n=" + std::to_string(n_small) + ", " + fmt(large) + " at n=" +
               std::to_string(n_large);
  return out;
}

CheckOutcome gaussian() {
  CheckOutcome out{"gaussian", false, "", json::object()};

  // Roundtrip on a log grid covering [1e-300, 1/2] and 1 - [1e-16, 1/2].
  double worst_roundtrip = 0.0;
  for (double k = -300.0; k <= std::log10(0.5); k += 0.25) {
    const double s = std::pow(10.0, k);
    worst_roundtrip = std::max(worst_roundtrip, std::abs(gauss::cdf(gauss::quantile(s)) - s));
  }
  for (double k = -16.0; k <= std::log10(0.5); k += 0.25) {
    const double s = 1.0 - std::pow(10.0, k);
    worst_roundtrip = std::max(worst_roundtrip, std::abs(gauss::cdf(gauss::quantile(s)) - s));
  }

  // Closed-form moment integrals against tanh-sinh quadrature of an
  // independent quantile.
  const boost::math::normal_distribution<double> normal;
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto q = [&](double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return boost::math::quantile(normal, s);
  };
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_integral = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    double a = unit(rng);
    double b = unit(rng);
    if (a > b) std::swap(a, b);
    if (trial == 0) a = 0.0;
    if (trial == 1) b = 1.0;
    const auto [first, second] = gauss::quantile_moments(a, b);
    const double first_ref = integrator.integrate(q, a, b);
    const double second_ref = integrator.integrate([&](double s) { return q(s) * q(s); }, a, b);
    worst_integral = std::max({worst_integral, std::abs(first - first_ref), std::abs(second - second_ref)});
  }

  const double s = 1e-8;
  const double exact_sq = gauss::quantile(s) * gauss::quantile(s);
  const double rel = std::abs(gauss::quantile_sq_asymptotic(s) - exact_sq) / exact_sq;

  const bool ok_roundtrip = worst_roundtrip < 1e-12;
  const bool ok_integral = worst_integral < 1e-9;
  const bool ok_expansion = rel < 0.02;
  out.passed = ok_roundtrip && ok_integral && ok_expansion;
  out.metrics = {{"roundtrip_max_error", worst_roundtrip},
                 {"integral_max_error", worst_integral},
                 {"quantile_sq_rel_error_1e-8", rel}};
  out.detail = "roundtrip " + fmt(worst_roundtrip) + ", integrals " + fmt(worst_integral) + ", expansion rel " +
               fmt(rel);
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"oracle",          "sandwich",     "one-shot",    "sv-identity",
                                                 "remainder-slope", "md-inversion", "bahadur-rao", "gaussian"};
  return names;
}

}  // namespace vlc::checks

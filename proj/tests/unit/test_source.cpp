#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "vlc/error.hpp"
#include "vlc/source.hpp"

using namespace vlc;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

big entropy_reference(const std::vector<big>& p) {
  big h = 0;
  for (const auto& x : p) h -= x * boost::multiprecision::log2(x);
  return h;
}

}  // namespace

TEST_CASE("construction and validation") {
  const auto b = DiscreteSource::bernoulli(mpq_class(1, 4));
  CHECK(b.size() == 2);
  CHECK(b.probs()[0] == mpq_class(3, 4));
  CHECK(b.probs()[1] == mpq_class(1, 4));
  CHECK(b.describe() == "{3/4, 1/4}");

  CHECK_THROWS_AS(DiscreteSource::from_strings({"1/2", "49/100"}), ParseError);
  try {
    DiscreteSource::from_strings({"1/2", "49/100"});
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1/100") != std::string::npos);
  }
  CHECK_THROWS_AS(DiscreteSource::from_strings({"1"}), ParseError);
  CHECK_THROWS_AS(DiscreteSource::from_strings({"3/2", "-1/2"}), ParseError);

  // Zero-probability symbols are dropped.
  const DiscreteSource stripped({"a", "b", "c"}, {mpq_class(1, 2), mpq_class(0), mpq_class(1, 2)});
  CHECK(stripped.size() == 2);
  CHECK(stripped.symbols()[1] == "c");
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/10") == mpq_class(3, 10));
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(parse_rational("2.5e-3") == mpq_class(1, 400));
  CHECK(parse_rational("-6/8") == mpq_class(-3, 4));
  CHECK(parse_rational("1") == 1);
  CHECK_THROWS_AS(parse_rational("nan"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(format_rational(mpq_class(6, 8)) == "3/4");
  CHECK(format_rational(mpq_class(2)) == "2");
}

TEST_CASE("source json") {
  const auto src = parse_source_json(R"({"symbols": ["a", "b"], "probs": ["3/10", "0.7"]})");
  CHECK(src.probs()[0] == mpq_class(3, 10));
  CHECK(src.symbols()[0] == "a");
  CHECK_FALSE(src.lattice_span_override().has_value());

  const auto with_span = parse_source_json(R"({"probs": ["1/2", "1/2"], "lattice_span": 0.5})");
  REQUIRE(with_span.lattice_span_override().has_value());
  CHECK(lattice_span(with_span) == 0.5);

  CHECK_THROWS_AS(parse_source_json(R"({"probs": [0.3, 0.7]})"), ParseError);
  CHECK_THROWS_AS(parse_source_json(R"({"probs": ["1/2"]})"), ParseError);
  CHECK_THROWS_AS(parse_source_json(R"({"symbols": ["a"], "probs": ["1/2", "1/2"]})"), ParseError);
  CHECK_THROWS_AS(parse_source_json(R"({"probs": "1/2"})"), ParseError);
  CHECK_THROWS_AS(parse_source_json("{not json"), ParseError);
  try {
    parse_source_json(R"({"probs": ["1/2", "x"]})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("probs") != std::string::npos);
  }

  const auto path = std::filesystem::temp_directory_path() / "vlc_source_test.json";
  {
    std::ofstream out(path);
    out << R"({"symbols": ["x", "y", "z"], "probs": ["1/2", "1/4", "1/4"]})";
  }
  CHECK(load_source(path).size() == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_source("/nonexistent/source.json"), ParseError);
}

TEST_CASE("information moments") {
  const auto b14 = DiscreteSource::bernoulli(mpq_class(1, 4));
  const auto m = info_moments(b14);
  const big h = entropy_reference({big(3) / 4, big(1) / 4});
  CHECK(m.entropy == doctest::Approx(h.convert_to<double>()).epsilon(1e-15));
  CHECK(m.entropy == doctest::Approx(0.8112781245).epsilon(1e-10));

  // Bernoulli varentropy: p(1-p) log2^2((1-p)/p).
  const double l = std::log2(3.0);
  CHECK(m.varentropy == doctest::Approx(0.75 * 0.25 * l * l).epsilon(1e-14));
  // Two-point skewness: (1 - 2p) / (6 sqrt(p(1-p))) in the information density orientation.
  REQUIRE(m.skew.has_value());
  CHECK(*m.skew == doctest::Approx((1 - 2 * 0.25) / (6 * std::sqrt(0.25 * 0.75))).epsilon(1e-13));

  const auto uni = info_moments(DiscreteSource::uniform(4));
  CHECK(uni.entropy == doctest::Approx(2.0));
  CHECK(uni.varentropy == 0.0);
  CHECK_FALSE(uni.skew.has_value());
  CHECK_THROWS_AS(uni.skew_or_throw(), DomainError);

  const auto sym = info_moments(DiscreteSource::from_strings({"1/2", "1/4", "1/4"}));
  CHECK(sym.entropy == doctest::Approx(1.5));
  CHECK(sym.varentropy == doctest::Approx(0.25));
  CHECK(std::abs(sym.skew_or_throw()) < 1e-15);
}

TEST_CASE("renyi and support entropies") {
  const auto b14 = DiscreteSource::bernoulli(mpq_class(1, 4));
  CHECK(renyi_entropy(b14, 0.0) == doctest::Approx(1.0));
  CHECK(renyi_entropy(b14, 1.0) == doctest::Approx(0.8112781245).epsilon(1e-10));
  CHECK(renyi_entropy(b14, 2.0) == doctest::Approx(-std::log2(10.0 / 16.0)).epsilon(1e-14));
  CHECK(renyi_entropy(b14, 2.0) == doctest::Approx(0.678071905).epsilon(1e-9));

  auto [h0, hinf] = support_entropies(b14);
  CHECK(h0 == doctest::Approx(1.0));
  CHECK(hinf == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-14));
  std::tie(h0, hinf) = support_entropies(DiscreteSource::uniform(8));
  CHECK(h0 == doctest::Approx(3.0));
  CHECK(hinf == doctest::Approx(3.0));
  std::tie(h0, hinf) = support_entropies(DiscreteSource::from_strings({"1/2", "1/4", "1/4"}));
  CHECK(h0 == doctest::Approx(std::log2(3.0)));
  CHECK(hinf == doctest::Approx(1.0));

  // Ordered between min-entropy and Hartley entropy, nonincreasing in alpha.
  for (const auto& src : {b14, DiscreteSource::from_strings({"1/2", "1/3", "1/6"}),
                          DiscreteSource::from_strings({"7/10", "1/5", "1/10"})}) {
    const auto [lo_bound, hi_bound] = std::pair{support_entropies(src).second, support_entropies(src).first};
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha = 0.0; alpha <= 8.0; alpha += 0.125) {
      const double h = renyi_entropy(src, alpha);
      CHECK(h <= prev + 1e-12);
      CHECK(h >= lo_bound - 1e-12);
      CHECK(h <= hi_bound + 1e-12);
      prev = h;
    }
  }
  CHECK_THROWS_AS(renyi_entropy(b14, -1.0), DomainError);
}

TEST_CASE("lattice span") {
  CHECK(lattice_span(DiscreteSource::from_strings({"1/2", "1/4", "1/4"})) == 1.0);
  CHECK(lattice_span(DiscreteSource::from_strings({"2/3", "1/3"})) == doctest::Approx(1.0));
  CHECK(lattice_span(DiscreteSource::from_strings({"1/2", "1/8", "1/8", "1/4"})) == 1.0);
  CHECK(lattice_span(DiscreteSource::from_strings({"4/7", "2/7", "1/7"})) == doctest::Approx(1.0));
  CHECK(lattice_span(DiscreteSource::uniform(5)) == 0.0);
  // A two-point information density always lives on a lattice.
  CHECK(lattice_span(DiscreteSource::bernoulli(mpq_class(3, 10))) == doctest::Approx(std::log2(7.0 / 3.0)));
  CHECK(lattice_span(DiscreteSource::from_strings({"1/2", "1/3", "1/6"})) == 0.0);

  for (const auto& src : {DiscreteSource::from_strings({"8/15", "4/15", "2/15", "1/15"}),
                          DiscreteSource::from_strings({"9/13", "3/13", "1/13"})}) {
    const double d = lattice_span(src);
    REQUIRE(d > 0.0);
    for (const auto& p : src.probs()) {
      for (const auto& q : src.probs()) {
        const double k = std::log2(mpq_class(p / q).get_d()) / d;
        CHECK(std::abs(k - std::round(k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("cramer condition") {
  CHECK(cramer_check(DiscreteSource::bernoulli(mpq_class(1, 4))));
  CHECK(cramer_check(DiscreteSource::from_strings({"1/2", "1/4", "1/4"})));
  CHECK(cramer_check(DiscreteSource::uniform(2)));
}

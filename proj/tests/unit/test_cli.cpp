#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "vlc/cli.hpp"
#include "vlc/error.hpp"

using namespace vlc;
using namespace vlc::cli;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      cells.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  FAIL("no column " << name);
  return -1;
}

}  // namespace

TEST_CASE("blocklength lists") {
  CHECK(parse_n_list("7") == std::vector<int>{7});
  CHECK(parse_n_list("1, 2,8") == std::vector<int>{1, 2, 8});
  CHECK(parse_n_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_n_list("100..1000:300") == std::vector<int>{100, 400, 700, 1000});
  CHECK(parse_n_list("3,10..12") == std::vector<int>{3, 10, 11, 12});
  CHECK(parse_n_list("5..5") == std::vector<int>{5});
  for (const char* bad : {"", "0", "-3", "a", "1..", "4..2", "1..9:0", "1,,2", "2.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_n_list(bad), ParseError);
  }
}

TEST_CASE("eps lists") {
  const auto e = parse_eps_list("0, 1/10,0.25,1/n,1-1/n,1");
  REQUIRE(e.size() == 6);
  CHECK(e[0].at(9) == 0);
  CHECK(e[1].at(9) == mpq_class(1, 10));
  CHECK(e[2].value == mpq_class(1, 4));
  CHECK(e[3].at(8) == mpq_class(1, 8));
  CHECK(e[4].at(8) == mpq_class(7, 8));
  CHECK(e[4].at(1) == 0);
  CHECK(e[3].label() == "1/n");
  CHECK(e[4].label() == "1-1/n");
  CHECK(e[2].label() == "1/4");
  for (const char* bad : {"3/2", "-1/10", "x", "1/0", "", "0.1,,0.2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_eps_list(bad), ParseError);
  }
}

TEST_CASE("check lists") {
  CHECK(parse_check_list("gaussian") == std::vector<std::string>{"gaussian"});
  CHECK(parse_check_list("oracle,sv-identity") == std::vector<std::string>{"oracle", "sv-identity"});
  CHECK(parse_check_list("all") == checks::check_names());
  CHECK_THROWS_AS(parse_check_list(""), ParseError);
  CHECK_THROWS_AS(parse_check_list("none"), ParseError);
  CHECK_THROWS_AS(parse_check_list("gaussian,bogus"), ParseError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-3.0) == "-3");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("describe report") {
  const auto r = describe_report(DiscreteSource::bernoulli(mpq_class(1, 4)));
  CHECK(r.find("0.81127812") != std::string::npos);
  CHECK(r.find("nonlattice") == std::string::npos);
  const auto l = describe_report(DiscreteSource::from_strings({"1/2", "1/4", "1/4"}));
  CHECK(l.find("d_X (bits)    1\n") != std::string::npos);
  CHECK(describe_report(DiscreteSource::uniform(4)).find("undefined") != std::string::npos);
}

TEST_CASE("table rows") {
  const auto src = DiscreteSource::bernoulli(mpq_class(1, 4));
  const auto eps = parse_eps_list("0,1/10,1/2,1,1/n,1-1/n");
  const auto t = build_table(src, {1, 2, 10, 40}, eps);
  CHECK(t.rows == 24);
  CHECK(t.skipped == 0);
  CHECK(t.csv.find('\r') == std::string::npos);
  CHECK(t.csv.back() == '\n');

  const auto rows = parse_csv(t.csv);
  REQUIRE(rows.size() == 25);
  const auto& h = rows[0];
  CHECK(t.csv.substr(0, kTableHeader.size()) == kTableHeader);
  const int n_col = column(h, "n");
  const int eps_col = column(h, "eps");
  const int l = column(h, "L_exact");
  const int vl2 = column(h, "vl2");
  const int vl3 = column(h, "vl3");
  const int rem2 = column(h, "rem2");
  const int rem3 = column(h, "rem3");
  const int log2m = column(h, "log2_M_exact");
  const int md_p = column(h, "md3_bits_paper");
  const int rem_md_p = column(h, "rem_md_paper");
  const int eta = column(h, "eta_exact_bits");

  CHECK(rows[1][n_col] == "1");
  CHECK(rows[1][eps_col] == "0");
  CHECK(rows[1][l] == "0.25");
  CHECK(rows[1][vl3].empty());
  CHECK(rows[1][md_p].empty());

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    REQUIRE(r.size() == h.size());
    if (!r[vl3].empty()) CHECK(std::stod(r[rem3]) == std::stod(r[l]) - std::stod(r[vl3]));
    if (!r[vl2].empty()) CHECK(std::stod(r[rem2]) == std::stod(r[l]) - std::stod(r[vl2]));
    if (!r[md_p].empty()) CHECK(std::stod(r[rem_md_p]) == std::stod(r[log2m]) - std::stod(r[md_p]));
    if (r[eps_col] == "1") {
      CHECK(r[l] == "0");
      CHECK(r[vl2] == "0");
      CHECK((r[vl3] == "0" || r[vl3].empty()));
      CHECK(r[log2m].empty());
      CHECK(r[eta].empty());
    }
  }
  // 1/n at n = 10 is the rational 1/10.
  CHECK(rows[3 * 6 - 1][eps_col] == "1/10");
  CHECK(rows[3 * 6][eps_col] == "9/10");

  const auto again = build_table(src, {1, 2, 10, 40}, eps);
  CHECK(again.csv == t.csv);
}

TEST_CASE("table budget") {
  const auto src = DiscreteSource::from_strings({"1/2", "1/3", "1/6"});
  const auto t = build_table(src, {2, 40}, parse_eps_list("1/2"), 100);
  CHECK(t.rows == 1);
  CHECK(t.skipped == 1);
  REQUIRE(t.notes.size() == 1);
  CHECK(t.notes[0].find("n = 40") != std::string::npos);
  CHECK(parse_csv(t.csv).size() == 2);
}

TEST_CASE("check runner") {
  RunConfig c;
  c.checks = {"gaussian"};
  auto out = run_checks(std::nullopt, c);
  REQUIRE(out.size() == 1);
  CHECK(out[0].passed);

  c.checks = {"oracle"};
  CHECK_THROWS_AS(run_checks(std::nullopt, c), ParseError);

  const auto src = DiscreteSource::bernoulli(mpq_class(3, 10));
  c.n_list = {1, 2, 3, 4, 5};
  c.eps_list = parse_eps_list("0,1/2,1");
  out = run_checks(src, c);
  REQUIRE(out.size() == 1);
  CHECK(out[0].passed);

  c.eps_list = parse_eps_list("1/n");
  CHECK_THROWS_AS(run_checks(src, c), ParseError);

  c.checks = {"bahadur-rao"};
  c.n_list = {100};
  CHECK_THROWS_AS(run_checks(src, c), ParseError);

  const auto j = verdict_json({{"a", true, "ok", {}}, {"b", false, "bad", {{"x", 1}}}});
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["metrics"]["x"] == 1);
}

#include "vlc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "vlc/asymptotics.hpp"
#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"

namespace vlc::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string(what) + ": not an integer: '" + std::string(s) + "'");
  }
  return value;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

template <class F>
std::optional<double> guarded(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<double> diff(const std::optional<double>& a, const std::optional<double>& b) {
  if (a && b) return *a - *b;
  return std::nullopt;
}

}  // namespace

mpq_class EpsSpec::at(int n) const {
  switch (kind) {
    case Kind::inverse_n:
      return mpq_class(1, n);
    case Kind::one_minus_inverse_n:
      return mpq_class(n - 1, n);
    case Kind::fixed:
      break;
  }
  return value;
}

std::string EpsSpec::label() const {
  switch (kind) {
    case Kind::inverse_n:
      return "1/n";
    case Kind::one_minus_inverse_n:
      return "1-1/n";
    case Kind::fixed:
      break;
  }
  return format_rational(value);
}

std::vector<int> parse_n_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) throw ParseError("--n: empty item in '" + std::string(text) + "'");
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int(item, "--n"));
      continue;
    }
    const auto lo = parse_int(trim(item.substr(0, dots)), "--n");
    auto rest = item.substr(dots + 2);
    int step = 1;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      step = parse_int(trim(rest.substr(colon + 1)), "--n");
      rest = rest.substr(0, colon);
    }
    const auto hi = parse_int(trim(rest), "--n");
    if (step <= 0) throw ParseError("--n: step must be positive in '" + std::string(item) + "'");
    if (hi < lo) throw ParseError("--n: empty range '" + std::string(item) + "'");
    for (long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
  }
  for (int v : out) {
    if (v < 1) throw ParseError("--n: blocklengths must be positive, got " + std::to_string(v));
  }
  return out;
}

std::vector<EpsSpec> parse_eps_list(std::string_view text) {
  std::vector<EpsSpec> out;
  for (auto item : split(text, ',')) {
    if (item == "1/n") {
      out.push_back({EpsSpec::Kind::inverse_n, 0});
    } else if (item == "1-1/n") {
      out.push_back({EpsSpec::Kind::one_minus_inverse_n, 0});
    } else {
      const mpq_class q = parse_rational(item);
      if (q < 0 || q > 1) throw ParseError("--eps: " + format_rational(q) + " is outside [0, 1]");
      out.push_back({EpsSpec::Kind::fixed, q});
    }
  }
  return out;
}

std::vector<std::string> parse_check_list(std::string_view text) {
  const auto& known = checks::check_names();
  std::vector<std::string> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      out.insert(out.end(), known.begin(), known.end());
      continue;
    }
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ParseError("unknown check '" + std::string(item) + "' (known: " + list + ")");
    }
    out.emplace_back(item);
  }
  if (out.empty()) throw ParseError("--checks: no check suites selected");
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string describe_report(const DiscreteSource& src) {
  const auto m = info_moments(src);
  const auto [h0, hinf] = support_entropies(src);
  std::ostringstream os;
  os << "source        " << src.describe() << "\n";
  os << "symbols       " << src.size() << "\n";
  os << "H  (bits)     " << format_number(m.entropy) << "\n";
  os << "V  (bits^2)   " << format_number(m.varentropy) << "\n";
  os << "S             " << (m.skew ? format_number(*m.skew) : std::string("undefined (V = 0)")) << "\n";
  os << "H_0           " << format_number(h0) << "\n";
  os << "H_inf         " << format_number(hinf) << "\n";
  for (double alpha : {0.25, 0.5, 2.0, 4.0}) {
    char label[32];
    std::snprintf(label, sizeof label, "H_%-11g", alpha);
    os << label << " " << format_number(renyi_entropy(src, alpha)) << "\n";
  }
  const double span = lattice_span(src);
  os << "d_X (bits)    " << (span > 0 ? format_number(span) : std::string("0 (nonlattice)")) << "\n";
  os << "cramer        " << (cramer_check(src) ? "yes" : "no") << "\n";
  return os.str();
}

TableResult build_table(const DiscreteSource& src, const std::vector<int>& ns, const std::vector<EpsSpec>& eps,
                        std::uint64_t budget) {
  using namespace asym;
  const auto m = info_moments(src);
  TableResult out;
  std::string csv(kTableHeader);
  csv += '\n';
  for (int n : ns) {
    std::optional<LevelDistribution> levels;
    try {
      levels.emplace(enumerate_levels(src, n, budget));
    } catch (const BudgetExceeded& e) {
      out.skipped += eps.size();
      out.notes.push_back("n = " + std::to_string(n) + " skipped: " + e.what());
      continue;
    }
    for (const auto& spec : eps) {
      const mpq_class q = spec.at(n);
      const double e = to_double(q);
      const std::optional<double> l_exact = l_star(*levels, q);
      const auto vl2 = guarded([&] { return vl_second_order(m, n, e); });
      const auto vl3 = guarded([&] { return vl_third_order(m, n, e); });
      const mpz_class mstar = m_star(*levels, q);
      std::optional<double> log2_m;
      if (sgn(mstar) > 0) log2_m = log2_of(mstar);
      const auto fl3 = guarded([&] { return fl_third_order(m, n, e); });
      const auto md_paper = guarded([&] { return fl_md_expansion(m, n, e, MdConvention::bits_paper); });
      const auto md_conv = guarded([&] { return fl_md_expansion(m, n, e, MdConvention::nats_converted); });
      const std::optional<double> eta_exact =
          q < 1 ? std::optional<double>(eta_quantile(*levels, q) / std::numbers::ln2) : std::nullopt;
      const auto eta_md = guarded([&] { return eta_md_expansion(m, n, e); });

      csv += std::to_string(n) + ',' + format_rational(q) + ',' + cell(l_exact) + ',' + cell(vl2) + ',' +
             cell(vl3) + ',' + cell(diff(l_exact, vl2)) + ',' + cell(diff(l_exact, vl3)) + ',' + cell(log2_m) +
             ',' + cell(fl3) + ',' + cell(md_paper) + ',' + cell(md_conv) + ',' + cell(diff(log2_m, md_paper)) +
             ',' + cell(diff(log2_m, md_conv)) + ',' + cell(eta_exact) + ',' + cell(eta_md) + '\n';
      ++out.rows;
    }
  }
  out.csv = std::move(csv);
  return out;
}

std::vector<checks::CheckOutcome> run_checks(const std::optional<DiscreteSource>& src, const RunConfig& config) {
  using namespace checks;
  auto ns_or = [&](std::vector<int> fallback) { return config.n_list.empty() ? fallback : config.n_list; };
  auto eps_or = [&](std::vector<mpq_class> fallback) {
    if (config.eps_list.empty()) return fallback;
    std::vector<mpq_class> out;
    for (const auto& spec : config.eps_list) {
      if (spec.kind != EpsSpec::Kind::fixed) {
        throw ParseError("--eps: check suites take fixed values, not '" + spec.label() + "'");
      }
      out.push_back(spec.value);
    }
    return out;
  };
  auto need_source = [&](const std::string& name) -> std::vector<SourceCase> {
    if (!src) throw ParseError("check '" + name + "' needs --source");
    return {{config.source_path.filename().string(), *src}};
  };
  const std::vector<mpq_class> grid6 = {0, mpq_class(1, 10), mpq_class(1, 4), mpq_class(1, 2), mpq_class(9, 10), 1};

  std::vector<CheckOutcome> out;
  for (const auto& name : config.checks) {
    if (name == "gaussian") {
      out.push_back(gaussian());
    } else if (name == "oracle") {
      out.push_back(oracle_equality(need_source(name), ns_or(int_range(1, 12)), eps_or(grid6)));
    } else if (name == "sandwich") {
      out.push_back(sandwich(need_source(name), ns_or(int_range(1, 200)),
                             eps_or({mpq_class(1, 10), mpq_class(1, 2), mpq_class(9, 10)})));
    } else if (name == "one-shot") {
      out.push_back(one_shot(need_source(name), ns_or(int_range(1, 200)), eps_or(grid6)));
    } else if (name == "sv-identity") {
      out.push_back(sv_identity(need_source(name), ns_or(int_range(1, 12))));
    } else if (name == "remainder-slope") {
      const auto& s = need_source(name).front().source;
      const auto ns = ns_or(int_range(100, 1000, 100));
      out.push_back(third_order_slopes(s, ns, eps_or({mpq_class(1, 10), mpq_class(1, 2)})));
      out.push_back(zero_error_slope(s, ns));
      out.push_back(md_block(s, ns));
    } else if (name == "md-inversion") {
      out.push_back(md_inversion(need_source(name).front().source, ns_or({100, 1000, 10000})));
    } else if (name == "bahadur-rao") {
      const auto ns = ns_or({100, 500});
      if (ns.size() < 2) throw ParseError("check 'bahadur-rao' needs two blocklengths");
      out.push_back(bahadur_rao(need_source(name).front().source, ns.front(), ns.back()));
    }
  }
  return out;
}

nlohmann::json verdict_json(const std::vector<checks::CheckOutcome>& outcomes) {
  nlohmann::json j;
  bool all = true;
  j["checks"] = nlohmann::json::array();
  for (const auto& o : outcomes) {
    all = all && o.passed;
    j["checks"].push_back({{"name", o.name}, {"passed", o.passed}, {"detail", o.detail}, {"metrics", o.metrics}});
  }
  j["passed"] = all;
  return j;
}

}  // namespace vlc::cli

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "vlc/bigfloat.hpp"
#include "vlc/cli.hpp"
#include "vlc/error.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Flags {
  std::string source;
  std::string n;
  std::string eps;
  std::string out;
  std::string checks;
  int precision = 256;
  std::uint64_t budget = vlc::kDefaultTypeBudget;
};

vlc::cli::RunConfig to_config(const Flags& f) {
  vlc::cli::RunConfig c;
  c.source_path = f.source;
  c.out_path = f.out;
  c.precision_bits = f.precision;
  c.budget = f.budget;
  if (!f.n.empty()) c.n_list = vlc::cli::parse_n_list(f.n);
  if (!f.eps.empty()) c.eps_list = vlc::cli::parse_eps_list(f.eps);
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw vlc::ParseError("cannot open '" + path + "' for writing");
  os << text;
}

int cmd_describe(const Flags& f) {
  const auto src = vlc::load_source(f.source);
  std::cout << vlc::cli::describe_report(src);
  return kOk;
}

int cmd_table(const Flags& f) {
  const auto config = to_config(f);
  if (config.n_list.empty()) throw vlc::ParseError("table needs --n");
  if (config.eps_list.empty()) throw vlc::ParseError("table needs --eps");
  const auto src = vlc::load_source(config.source_path);
  const auto table = vlc::cli::build_table(src, config.n_list, config.eps_list, config.budget);
  for (const auto& note : table.notes) std::cerr << "vlc-limits: " << note << "\n";
  if (f.out.empty() || f.out == "-") {
    std::cout << table.csv;
  } else {
    write_text(f.out, table.csv);
  }
  return table.rows == 0 && table.skipped > 0 ? kBudget : kOk;
}

int cmd_check(const Flags& f) {
  auto config = to_config(f);
  config.checks = vlc::cli::parse_check_list(f.checks);
  std::optional<vlc::DiscreteSource> src;
  if (!f.source.empty()) src = vlc::load_source(config.source_path);
  std::vector<vlc::checks::CheckOutcome> outcomes;
  try {
    outcomes = vlc::cli::run_checks(src, config);
  } catch (const vlc::BudgetExceeded& e) {
    std::cerr << "vlc-limits: " << e.what() << " (needs " << e.required() << ")\n";
    return kBudget;
  }
  bool all = true;
  for (const auto& o : outcomes) {
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << o.name << " | " << o.detail << "\n";
    all = all && o.passed;
  }
  const auto verdict = vlc::cli::verdict_json(outcomes).dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << verdict;
  } else {
    write_text(f.out, verdict);
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic limits of lossless compression for memoryless sources", "vlc-limits"};
  app.require_subcommand(1);
  Flags f;

  auto* describe = app.add_subcommand("describe", "Print information moments and entropies of a source");
  describe->add_option("--source", f.source, "Source spec JSON")->required();

  auto* table = app.add_subcommand("table", "Exact limits and expansions over an (n, eps) grid as CSV");
  table->add_option("--source", f.source, "Source spec JSON")->required();
  table->add_option("--n", f.n, "Blocklengths: list or a..b[:step]")->required();
  table->add_option("--eps", f.eps, "Comma list of rationals, 1/n, 1-1/n")->required();
  table->add_option("--out", f.out, "CSV path (stdout when omitted)");

  auto* check = app.add_subcommand("check", "Run verification suites");
  check->add_option("--source", f.source, "Source spec JSON");
  check->add_option("--n", f.n, "Blocklengths: list or a..b[:step]");
  check->add_option("--eps", f.eps, "Comma list of rationals");
  check->add_option("--checks", f.checks, "Comma list of suites, or all")->required();
  check->add_option("--out", f.out, "JSON verdict path (stdout when omitted)");

  for (auto* sub : {describe, table, check}) {
    sub->add_option("--precision", f.precision, "Working precision in bits")->check(CLI::Range(53, 1 << 20));
    sub->add_option("--budget", f.budget, "Maximum type classes per blocklength");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    vlc::set_working_precision(f.precision);
    if (*describe) return cmd_describe(f);
    if (*table) return cmd_table(f);
    return cmd_check(f);
  } catch (const vlc::ParseError& e) {
    std::cerr << "vlc-limits: " << e.what() << "\n";
    return kUsage;
  } catch (const vlc::DomainError& e) {
    std::cerr << "vlc-limits: " << e.what() << "\n";
    return kUsage;
  } catch (const vlc::BudgetExceeded& e) {
    std::cerr << "vlc-limits: " << e.what() << "\n";
    return kBudget;
  }
}

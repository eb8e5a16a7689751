#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlc/checks.hpp"
#include "vlc/exact.hpp"
#include "vlc/source.hpp"

namespace vlc::cli {

/// A fixed eps or one of the per-row sequences 1/n and 1 - 1/n.
struct EpsSpec {
  enum class Kind { fixed, inverse_n, one_minus_inverse_n };
  Kind kind = Kind::fixed;
  mpq_class value;

  mpq_class at(int n) const;
  std::string label() const;
};

struct RunConfig {
  std::filesystem::path source_path;
  std::vector<int> n_list;
  std::vector<EpsSpec> eps_list;
  std::vector<std::string> checks;
  std::filesystem::path out_path;
  int precision_bits = 256;
  std::uint64_t budget = kDefaultTypeBudget;
};

/// "5", "1,2,8", "1..12", "100..1000:100" or a comma list mixing them.
/// Values must be positive; duplicates are kept in order.
std::vector<int> parse_n_list(std::string_view text);

/// Comma list of rationals/decimals in [0, 1], "1/n" and "1-1/n".
std::vector<EpsSpec> parse_eps_list(std::string_view text);

/// Comma list of suite names; "all" expands to every suite. Unknown names,
/// "none" and an empty list throw ParseError.
std::vector<std::string> parse_check_list(std::string_view text);

/// %.17g
std::string format_number(double x);

/// H, V, S, H_0, H_inf, a Renyi grid, the lattice span and Cramer's flag.
std::string describe_report(const DiscreteSource& src);

inline constexpr std::string_view kTableHeader =
    "n,eps,L_exact,vl2,vl3,rem2,rem3,log2_M_exact,fl3,md3_bits_paper,md3_nats_conv,rem_md_paper,rem_md_conv,"
    "eta_exact_bits,eta_md";

struct TableResult {
  std::string csv;  // header plus one LF-terminated line per row
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::vector<std::string> notes;
};

/// One row per (n, eps); blocklengths over the budget are skipped with a
/// note. Cells whose expansion is undefined are left empty.
TableResult build_table(const DiscreteSource& src, const std::vector<int>& ns, const std::vector<EpsSpec>& eps,
                        std::uint64_t budget = kDefaultTypeBudget);

/// Runs the suites named in config.checks. Every suite except "gaussian"
/// needs a source. Missing n/eps lists fall back to per-suite defaults.
std::vector<checks::CheckOutcome> run_checks(const std::optional<DiscreteSource>& src, const RunConfig& config);

nlohmann::json verdict_json(const std::vector<checks::CheckOutcome>& outcomes);

}  // namespace vlc::cli

#include "vlc/source.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "vlc/bigfloat.hpp"
#include "vlc/error.hpp"

namespace vlc {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class pow10(unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

mpq_class parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&] { throw ParseError("not an exact rational: \"" + std::string(original) + "\""); };
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool neg = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) fail();
    exponent = std::stol(std::string(exp_part));
    if (neg) exponent = -exponent;
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) fail();
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) fail();
    digits = std::string(s);
  }
  mpq_class value{mpz_class(digits, 10)};
  const long shift = exponent - frac_digits;
  if (shift >= 0) {
    value *= pow10(static_cast<unsigned long>(shift));
  } else {
    value /= pow10(static_cast<unsigned long>(-shift));
  }
  value.canonicalize();
  return value;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  const std::string_view original = text;
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty rational");
  mpq_class value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = trim(s.substr(0, slash));
    const auto den = trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("not an exact rational: \"" + std::string(original) + "\"");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in \"" + std::string(original) + "\"");
    value = mpq_class(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    value = parse_decimal(s, original);
  }
  return negative ? mpq_class(-value) : value;
}

std::string format_rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

DiscreteSource::DiscreteSource(std::vector<std::string> symbols, std::vector<mpq_class> probs,
                               std::optional<double> lattice_span_override)
    : span_override_(lattice_span_override) {
  if (symbols.size() != probs.size()) {
    throw ParseError("symbols and probs have different lengths");
  }
  mpq_class total = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i].canonicalize();
    if (sgn(probs[i]) < 0) {
      throw ParseError("probs[" + std::to_string(i) + "] is negative: " + format_rational(probs[i]));
    }
    total += probs[i];
    if (sgn(probs[i]) > 0) {
      symbols_.push_back(std::move(symbols[i]));
      probs_.push_back(probs[i]);
    }
  }
  if (total != 1) {
    const mpq_class deficit = 1 - total;
    throw ParseError("probabilities sum to " + format_rational(total) + ", not 1 (deficit " +
                     format_rational(deficit) + ")");
  }
  if (probs_.size() < 2) throw ParseError("a source needs at least two symbols of positive probability");
  max_prob_ = *std::max_element(probs_.begin(), probs_.end());
  if (span_override_ && !(*span_override_ >= 0.0 && std::isfinite(*span_override_))) {
    throw ParseError("lattice_span override must be a finite nonnegative number");
  }
}

DiscreteSource DiscreteSource::bernoulli(const mpq_class& p) {
  return DiscreteSource({"0", "1"}, {mpq_class(1 - p), p});
}

DiscreteSource DiscreteSource::uniform(std::size_t size) {
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < size; ++i) symbols.push_back(std::to_string(i));
  return DiscreteSource(std::move(symbols), std::vector<mpq_class>(size, mpq_class(1, size)));
}

DiscreteSource DiscreteSource::from_strings(const std::vector<std::string>& probs) {
  std::vector<std::string> symbols;
  std::vector<mpq_class> values;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    symbols.push_back(std::to_string(i));
    values.push_back(parse_rational(probs[i]));
  }
  return DiscreteSource(std::move(symbols), std::move(values));
}

std::string DiscreteSource::describe() const {
  std::string out = "{";
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(probs_[i]);
  }
  return out + "}";
}

DiscreteSource parse_source_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("source JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("source JSON: top level must be an object");
  if (!doc.contains("probs") || !doc["probs"].is_array()) {
    throw ParseError("source JSON: field \"probs\" must be an array of rational strings");
  }
  const auto& probs_json = doc["probs"];
  std::vector<mpq_class> probs;
  for (std::size_t i = 0; i < probs_json.size(); ++i) {
    const auto& entry = probs_json[i];
    const std::string field = "probs[" + std::to_string(i) + "]";
    if (!entry.is_string()) {
      throw ParseError("source JSON: " + field +
                       " must be a string such as \"3/10\" (JSON numbers are not exact)");
    }
    try {
      probs.push_back(parse_rational(entry.get<std::string>()));
    } catch (const ParseError& e) {
      throw ParseError("source JSON: " + field + ": " + e.what());
    }
  }
  std::vector<std::string> symbols;
  if (doc.contains("symbols")) {
    const auto& sym = doc["symbols"];
    if (!sym.is_array()) throw ParseError("source JSON: field \"symbols\" must be an array");
    for (std::size_t i = 0; i < sym.size(); ++i) {
      if (!sym[i].is_string()) {
        throw ParseError("source JSON: symbols[" + std::to_string(i) + "] must be a string");
      }
      symbols.push_back(sym[i].get<std::string>());
    }
    if (symbols.size() != probs.size()) {
      throw ParseError("source JSON: " + std::to_string(symbols.size()) + " symbols but " +
                       std::to_string(probs.size()) + " probs");
    }
  } else {
    for (std::size_t i = 0; i < probs.size(); ++i) symbols.push_back(std::to_string(i));
  }
  std::optional<double> span;
  if (doc.contains("lattice_span") && !doc["lattice_span"].is_null()) {
    if (!doc["lattice_span"].is_number()) {
      throw ParseError("source JSON: field \"lattice_span\" must be a number (bits)");
    }
    span = doc["lattice_span"].get<double>();
  }
  try {
    return DiscreteSource(std::move(symbols), std::move(probs), span);
  } catch (const ParseError& e) {
    throw ParseError(std::string("source JSON: ") + e.what());
  }
}

DiscreteSource load_source(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open source file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_source_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

double InfoMoments::skew_or_throw() const {
  if (!skew) throw DomainError("skewness undefined: varentropy is zero");
  return *skew;
}

namespace {

bool equiprobable(const DiscreteSource& src) {
  const auto& p = src.probs();
  return std::all_of(p.begin(), p.end(), [&](const mpq_class& q) { return q == p.front(); });
}

}  // namespace

InfoMoments info_moments(const DiscreteSource& src) {
  const auto& probs = src.probs();
  std::vector<BigFloat> info;  // -log2 p
  info.reserve(probs.size());
  BigFloat entropy;
  for (const auto& p : probs) {
    BigFloat x = BigFloat::from(p);
    mpfr_log2(x.get(), x.get(), MPFR_RNDN);
    mpfr_neg(x.get(), x.get(), MPFR_RNDN);
    BigFloat term = BigFloat::from(p);
    mpfr_mul(term.get(), term.get(), x.get(), MPFR_RNDN);
    mpfr_add(entropy.get(), entropy.get(), term.get(), MPFR_RNDN);
    info.push_back(std::move(x));
  }
  InfoMoments m;
  m.entropy = entropy.to_double();
  if (equiprobable(src)) return m;

  BigFloat second;
  BigFloat third;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    BigFloat centered = info[i];
    mpfr_sub(centered.get(), centered.get(), entropy.get(), MPFR_RNDN);
    BigFloat pow2 = centered;
    mpfr_sqr(pow2.get(), pow2.get(), MPFR_RNDN);
    BigFloat pow3 = pow2;
    mpfr_mul(pow3.get(), pow3.get(), centered.get(), MPFR_RNDN);
    BigFloat p = BigFloat::from(probs[i]);
    mpfr_mul(pow2.get(), pow2.get(), p.get(), MPFR_RNDN);
    mpfr_mul(pow3.get(), pow3.get(), p.get(), MPFR_RNDN);
    mpfr_add(second.get(), second.get(), pow2.get(), MPFR_RNDN);
    mpfr_add(third.get(), third.get(), pow3.get(), MPFR_RNDN);
  }
  m.varentropy = second.to_double();
  // third / V^{3/2} / 6
  BigFloat scale = second;
  mpfr_pow_ui(scale.get(), scale.get(), 3, MPFR_RNDN);
  mpfr_sqrt(scale.get(), scale.get(), MPFR_RNDN);
  mpfr_div(third.get(), third.get(), scale.get(), MPFR_RNDN);
  mpfr_div_ui(third.get(), third.get(), 6, MPFR_RNDN);
  m.skew = third.to_double();
  return m;
}

double renyi_entropy(const DiscreteSource& src, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("renyi_entropy: alpha must be finite and >= 0");
  if (alpha == 1.0) return info_moments(src).entropy;
  if (alpha == 0.0) return std::log2(static_cast<double>(src.size()));
  BigFloat sum;
  for (const auto& p : src.probs()) {
    BigFloat x = BigFloat::from(p);
    BigFloat a = BigFloat::from(alpha);
    mpfr_pow(x.get(), x.get(), a.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), x.get(), MPFR_RNDN);
  }
  mpfr_log2(sum.get(), sum.get(), MPFR_RNDN);
  mpfr_div_d(sum.get(), sum.get(), 1.0 - alpha, MPFR_RNDN);
  return sum.to_double();
}

std::pair<double, double> support_entropies(const DiscreteSource& src) {
  return {std::log2(static_cast<double>(src.size())), -log2_of(src.max_prob())};
}

namespace {

std::optional<long> power_of_two_exponent(const mpq_class& ratio) {
  // ratio >= 1 here; it is 2^a iff the denominator is 1 and the numerator
  // has a single set bit.
  if (ratio.get_den() != 1) return std::nullopt;
  const mpz_class& num = ratio.get_num();
  if (mpz_popcount(num.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
}

constexpr double kSpanTolerance = 1e-9;
constexpr double kMinSpan = 1e-6;

}  // namespace

double lattice_span(const DiscreteSource& src) {
  if (src.lattice_span_override()) return *src.lattice_span_override();
  if (equiprobable(src)) return 0.0;

  std::vector<mpq_class> ratios;
  for (const auto& p : src.probs()) {
    mpq_class r = src.max_prob() / p;
    if (r != 1) ratios.push_back(r);
  }

  bool all_powers = true;
  long exponent_gcd = 0;
  for (const auto& r : ratios) {
    const auto a = power_of_two_exponent(r);
    if (!a) {
      all_powers = false;
      break;
    }
    exponent_gcd = std::gcd(exponent_gcd, *a);
  }
  if (all_powers) return static_cast<double>(exponent_gcd);

  std::vector<double> logs;
  for (const auto& r : ratios) logs.push_back(log2_of(r));
  double span = logs.front();
  for (std::size_t i = 1; i < logs.size(); ++i) {
    double a = std::max(span, logs[i]);
    double b = std::min(span, logs[i]);
    while (b > kSpanTolerance * a) {
      if (b < kMinSpan) return 0.0;
      const double r = std::abs(a - b * std::round(a / b));
      a = b;
      b = r;
    }
    span = a;
  }
  if (span < kMinSpan) return 0.0;
  for (double x : logs) {
    const double k = x / span;
    if (std::abs(k - std::round(k)) > kSpanTolerance * std::max(1.0, k)) return 0.0;
  }
  return span;
}

bool cramer_check(const DiscreteSource&) { return true; }

}  // namespace vlc

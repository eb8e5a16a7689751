#include "vlc/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "vlc/error.hpp"
#include "vlc/gaussian.hpp"

namespace vlc::asym {

namespace {

const double kLog2e = std::numbers::log2e;

void check_n(int n, int min_n) {
  if (n < min_n) throw DomainError("blocklength must be >= " + std::to_string(min_n));
}

void check_closed(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("eps outside [0, 1]");
}

void check_open(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps outside (0, 1)");
}

double dispersion_term(const InfoMoments& m, int n) { return std::sqrt(n * m.varentropy); }

}  // namespace

double vl_second_order(const InfoMoments& m, int n, double eps) {
  check_n(n, 1);
  check_closed(eps);
  return n * (1.0 - eps) * m.entropy - dispersion_term(m, n) * gauss::f_g(eps);
}

double vl_third_order(const InfoMoments& m, int n, double eps) {
  check_n(n, 2);
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("vl_third_order needs 0 < eps <= 1; use vl_zero_error at eps = 0");
  return vl_second_order(m, n, eps) - 0.5 * (1.0 - eps) * std::log2(static_cast<double>(n));
}

double vl_zero_error(const InfoMoments& m, int n) {
  check_n(n, 1);
  return n * m.entropy - 0.5 * std::log2(static_cast<double>(n));
}

double fl_third_order(const InfoMoments& m, int n, double eps) {
  check_n(n, 1);
  check_open(eps);
  return n * m.entropy - dispersion_term(m, n) * gauss::quantile(eps) - 0.5 * std::log2(static_cast<double>(n));
}

double md_coefficient(const InfoMoments& m, MdConvention convention) {
  const double s = m.skew_or_throw();
  switch (convention) {
    case MdConvention::bits_paper:
      return s - kLog2e / 2.0;
    case MdConvention::nats_converted:
      return (s - 0.5) * kLog2e;
    case MdConvention::dimensional:
      return s * std::sqrt(m.varentropy) - kLog2e / 2.0;
  }
  return 0.0;
}

std::string to_string(MdConvention convention) {
  switch (convention) {
    case MdConvention::bits_paper:
      return "bits_paper";
    case MdConvention::nats_converted:
      return "nats_converted";
    case MdConvention::dimensional:
      return "dimensional";
  }
  return "?";
}

double fl_md_expansion(const InfoMoments& m, int n, double eps, MdConvention convention) {
  const double z = gauss::quantile(eps);
  return fl_third_order(m, n, eps) + md_coefficient(m, convention) * z * z;
}

std::pair<double, double> dispersion_expansion(const InfoMoments& m, int n, double r, DispersionSide side) {
  check_n(n, 3);
  if (!(r > 0.0)) throw DomainError("dispersion_expansion needs r > 0");
  if (!(m.varentropy > 0.0)) throw DomainError("dispersion_expansion needs V > 0");
  const double ln_n = std::log(static_cast<double>(n));
  const double inner = 2.0 * r * ln_n - std::log(std::numbers::pi);
  if (!(inner > 0.0)) throw DomainError("dispersion_expansion: 2 r ln n - ln pi must be positive");

  const double small = std::pow(static_cast<double>(n), -r);
  const double eps = side == DispersionSide::error_small ? small : 1.0 - small;
  const double log2_n = std::log2(static_cast<double>(n));
  const double d = gauss::quantile(1.0 - eps) -
                   ((1.0 + 2.0 * r) * log2_n - std::log2(log2_n)) / (2.0 * dispersion_term(m, n));
  const double d_sq = 2.0 * r * ln_n - std::log(std::numbers::pi / 2.0) - std::log(inner);
  return {d, d_sq};
}

double eta_md_expansion(const InfoMoments& m, int n, double eps) {
  check_n(n, 1);
  check_open(eps);
  const double z = gauss::quantile(eps);
  return n * m.entropy - dispersion_term(m, n) * z + m.skew_or_throw() * z * z;
}

double info_cutoff_expansion(const InfoMoments& m, int n, double eps) { return vl_second_order(m, n, eps); }

ExpansionReport make_report(int n, double eps, double exact, double expansion, ExpansionId id) {
  return {n, eps, exact, expansion, exact - expansion, id};
}

}  // namespace vlc::asym

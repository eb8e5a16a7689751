#pragma once

#include <string>
#include <utility>

#include "vlc/source.hpp"

/// Closed-form expansions of the compression limits. Inputs are the
/// bit-based moments of the information density; every output is in bits
/// unless stated otherwise.
namespace vlc::asym {

/// n (1 - eps) H - sqrt(n V) f_G(eps).
double vl_second_order(const InfoMoments& m, int n, double eps);
/// vl_second_order - ((1 - eps) / 2) log2 n. Requires 0 < eps <= 1, n >= 2.
double vl_third_order(const InfoMoments& m, int n, double eps);
/// n H - (1/2) log2 n.
double vl_zero_error(const InfoMoments& m, int n);
/// n H - sqrt(n V) Phi^-1(eps) - (1/2) log2 n, for log2 M*(n, eps).
double fl_third_order(const InfoMoments& m, int n, double eps);

/// Coefficient of Phi^-1(eps)^2 in the moderate-deviations refinement of
/// log2 M*.
///
/// `bits_paper`: S - log2(e) / 2.
/// `nats_converted`: (S - 1/2) log2(e).
/// `dimensional`: S sqrt(V) - log2(e) / 2, which is what the tilted
/// expansion gives when S is kept dimensionless and V is in bits^2.
enum class MdConvention { bits_paper, nats_converted, dimensional };

double md_coefficient(const InfoMoments& m, MdConvention convention);
std::string to_string(MdConvention convention);

/// fl_third_order + md_coefficient * Phi^-1(eps)^2.
double fl_md_expansion(const InfoMoments& m, int n, double eps, MdConvention convention);

/// Which tail is polynomially small: the error probability eps = n^-r, or
/// the success probability 1 - eps = n^-r.
enum class DispersionSide { error_small, success_small };

/// Approximations of D*(n, eps) = (log2 M*(n, eps) - n H) / sqrt(n V) and
/// of D*^2 at eps = n^-r (error_small) or eps = 1 - n^-r (success_small).
///
/// first: Phi^-1(1 - eps) - ((1 + 2r) log2 n - log2 log2 n) / (2 sqrt(n V)).
/// second: 2 r ln n - ln(pi/2) - ln(2 r ln n - ln pi), the same on both
/// sides. Requires r > 0, n >= 3, V > 0 and 2 r ln n > ln pi.
std::pair<double, double> dispersion_expansion(const InfoMoments& m, int n, double r, DispersionSide side);

/// eta_n / ln 2 ~ n H - sqrt(n V) Phi^-1(eps) + S Phi^-1(eps)^2, in bits.
double eta_md_expansion(const InfoMoments& m, int n, double eps);

/// n (1 - eps) H - sqrt(n V) f_G(eps), the expansion of the cutoff
/// expectation of the information density.
double info_cutoff_expansion(const InfoMoments& m, int n, double eps);

enum class ExpansionId { vl2, vl3, vl0, fl3, fl_md, eta_md, info_cutoff };

struct ExpansionReport {
  int n = 0;
  double eps = 0.0;
  double exact = 0.0;
  double expansion_value = 0.0;
  double remainder = 0.0;
  ExpansionId expansion_id = ExpansionId::vl3;
};

ExpansionReport make_report(int n, double eps, double exact, double expansion, ExpansionId id);

}  // namespace vlc::asym

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <utility>

namespace vlc {

/// Working precision (bits) for converting exact quantities to reals.
/// Defaults to 256; the CLI's --precision flag sets it process-wide.
int working_precision() noexcept;
void set_working_precision(int bits);

/// Owning MPFR value. Only the handful of operations the library needs.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = working_precision());
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(BigFloat other) noexcept;
  ~BigFloat();

  static BigFloat from(const mpq_class& q, mpfr_prec_t prec = working_precision());
  static BigFloat from(const mpz_class& z, mpfr_prec_t prec = working_precision());
  static BigFloat from(double d, mpfr_prec_t prec = working_precision());

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

  friend void swap(BigFloat& a, BigFloat& b) noexcept { mpfr_swap(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

/// log2 of a positive rational / integer, correctly rounded to double.
double log2_of(const mpq_class& q);
double log2_of(const mpz_class& z);
/// Natural log of a positive rational / integer, correctly rounded to double.
double ln_of(const mpq_class& q);
double ln_of(const mpz_class& z);

/// Exact rational to the nearest double.
double to_double(const mpq_class& q);

/// Sum of log2(r) over integer r in [first, last]; 0 when the range is empty.
/// Evaluated as a difference of lnGamma values at enough precision that the
/// cancellation against ranks near 2^n stays below double resolution.
double sum_log2_range(const mpz_class& first, const mpz_class& last);

/// Exact sum of floor(log2 r) for r in [1, last]; 0 for last < 1.
mpz_class sum_floor_log2_prefix(const mpz_class& last);
/// Exact sum of floor(log2 r) for r in [first, last], first >= 1.
mpz_class sum_floor_log2_range(const mpz_class& first, const mpz_class& last);
/// Exact sum of ceil(log2 r) for r in [first, last], first >= 1.
mpz_class sum_ceil_log2_range(const mpz_class& first, const mpz_class& last);

/// MPFR-valued forms of the above at (at least) `prec` bits.
BigFloat log2_big(const mpz_class& z, mpfr_prec_t prec = working_precision());
BigFloat sum_log2_range_big(const mpz_class& first, const mpz_class& last, mpfr_prec_t prec = working_precision());

/// floor(log2 r) for r >= 1.
long floor_log2(const mpz_class& r);
/// ceil(log2 r) for r >= 1.
long ceil_log2(const mpz_class& r);

/// Exact ceiling / floor of a rational.
mpz_class ceil_of(const mpq_class& q);
mpz_class floor_of(const mpq_class& q);

}  // namespace vlc

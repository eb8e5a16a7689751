#include "vlc/bigfloat.hpp"

#include <algorithm>
#include <atomic>

#include "vlc/error.hpp"

namespace vlc {

namespace {

std::atomic<int> g_precision{256};

// Precision for lnGamma differences around magnitude 2^bits: the result
// is ~ bits * 2^bits, so keep 96 guard bits beyond that.
mpfr_prec_t precision_for_magnitude(const mpz_class& z) {
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(z.get_mpz_t(), 2));
  return std::max<mpfr_prec_t>(working_precision(), bits + 2 * 64 + 96);
}

}  // namespace

int working_precision() noexcept { return g_precision.load(std::memory_order_relaxed); }

void set_working_precision(int bits) {
  if (bits < 64 || bits > 1 << 20) {
    throw DomainError("precision must be in [64, 2^20] bits");
  }
  g_precision.store(bits, std::memory_order_relaxed);
}

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(other.precision()) {
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(BigFloat other) noexcept {
  swap(*this, other);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from(const mpq_class& q, mpfr_prec_t prec) {
  BigFloat out(prec);
  mpfr_set_q(out.value_, q.get_mpq_t(), MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from(const mpz_class& z, mpfr_prec_t prec) {
  BigFloat out(prec);
  mpfr_set_z(out.value_, z.get_mpz_t(), MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from(double d, mpfr_prec_t prec) {
  BigFloat out(prec);
  mpfr_set_d(out.value_, d, MPFR_RNDN);
  return out;
}

double log2_of(const mpq_class& q) {
  if (sgn(q) <= 0) throw DomainError("log2 of a nonpositive rational");
  BigFloat x = BigFloat::from(q);
  mpfr_log2(x.get(), x.get(), MPFR_RNDN);
  return x.to_double();
}

double log2_of(const mpz_class& z) {
  if (sgn(z) <= 0) throw DomainError("log2 of a nonpositive integer");
  BigFloat x = BigFloat::from(z);
  mpfr_log2(x.get(), x.get(), MPFR_RNDN);
  return x.to_double();
}

double ln_of(const mpq_class& q) {
  if (sgn(q) <= 0) throw DomainError("ln of a nonpositive rational");
  BigFloat x = BigFloat::from(q);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return x.to_double();
}

double ln_of(const mpz_class& z) {
  if (sgn(z) <= 0) throw DomainError("ln of a nonpositive integer");
  BigFloat x = BigFloat::from(z);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return x.to_double();
}

double to_double(const mpq_class& q) {
  BigFloat x = BigFloat::from(q);
  return x.to_double();
}

BigFloat log2_big(const mpz_class& z, mpfr_prec_t prec) {
  if (sgn(z) <= 0) throw DomainError("log2 of a nonpositive integer");
  BigFloat x = BigFloat::from(z, prec);
  mpfr_log2(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat sum_log2_range_big(const mpz_class& first, const mpz_class& last, mpfr_prec_t prec) {
  if (first > last) {
    BigFloat zero(prec);
    mpfr_set_zero(zero.get(), 1);
    return zero;
  }
  if (first < 1) throw DomainError("sum_log2_range needs first >= 1");
  const mpfr_prec_t inner = std::max(prec, precision_for_magnitude(last));
  BigFloat hi = BigFloat::from(mpz_class(last + 1), inner);
  BigFloat lo = BigFloat::from(first, inner);
  mpfr_lngamma(hi.get(), hi.get(), MPFR_RNDN);
  mpfr_lngamma(lo.get(), lo.get(), MPFR_RNDN);
  mpfr_sub(hi.get(), hi.get(), lo.get(), MPFR_RNDN);
  BigFloat ln2(inner);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  mpfr_div(hi.get(), hi.get(), ln2.get(), MPFR_RNDN);
  return hi;
}

double sum_log2_range(const mpz_class& first, const mpz_class& last) {
  return sum_log2_range_big(first, last, 64).to_double();
}

long floor_log2(const mpz_class& r) {
  if (r < 1) throw DomainError("floor_log2 needs r >= 1");
  return static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 1;
}

long ceil_log2(const mpz_class& r) {
  if (r < 1) throw DomainError("ceil_log2 needs r >= 1");
  if (r == 1) return 0;
  return floor_log2(mpz_class(r - 1)) + 1;
}

mpz_class sum_floor_log2_prefix(const mpz_class& last) {
  if (last < 1) return 0;
  const long top = floor_log2(last);
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(top));
  // sum_{k<top} k 2^k = (top - 2) 2^top + 2
  mpz_class total = mpz_class(top - 2) * pow2 + 2;
  total += mpz_class(top) * (last - pow2 + 1);
  return total;
}

mpz_class sum_floor_log2_range(const mpz_class& first, const mpz_class& last) {
  if (first > last) return 0;
  if (first < 1) throw DomainError("sum_floor_log2_range needs first >= 1");
  return sum_floor_log2_prefix(last) - sum_floor_log2_prefix(mpz_class(first - 1));
}

mpz_class sum_ceil_log2_range(const mpz_class& first, const mpz_class& last) {
  if (first < 1) throw DomainError("sum_ceil_log2_range needs first >= 1");
  // ceil(log2 r) = floor(log2 (r-1)) + 1 for r >= 2, and 0 at r = 1.
  const mpz_class start = first < 2 ? mpz_class(2) : first;
  if (start > last) return 0;
  return sum_floor_log2_range(mpz_class(start - 1), mpz_class(last - 1)) + (last - start + 1);
}

mpz_class ceil_of(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace vlc

#include "expdio/interval.hpp"

#include <cmath>
#include <utility>

namespace expdio {

namespace {

mpfr_prec_t max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision().bits, b.precision().bits);
}

std::string format_endpoint(mpfr_srcptr x, unsigned digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, x, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

}  // namespace

Precision Precision::from_digits(unsigned digits) {
  const double bits = std::ceil(static_cast<double>(digits) * 3.3219280948873623);
  return Precision{static_cast<mpfr_prec_t>(bits) + 16};
}

unsigned Precision::digits() const {
  return static_cast<unsigned>(std::floor(static_cast<double>(bits - 16) / 3.3219280948873623));
}

Interval::Interval(Precision p) {
  mpfr_init2(lo_, p.bits);
  mpfr_init2(hi_, p.bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(Precision p, long value) {
  mpfr_init2(lo_, p.bits);
  mpfr_init2(hi_, p.bits);
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_integer(Precision p, const Integer& value) {
  Interval r(p);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(Precision p, const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("from_rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  Interval r(p);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(Precision p, const ScaledDecimal& value) {
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(value.exp10)));
  const Integer mant(static_cast<long>(value.mantissa));
  if (value.exp10 >= 0) return from_integer(p, mant * ten_pow);
  return from_rational(p, mant, ten_pow);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(Precision{max_prec(a, b)});
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi(Precision p) {
  Interval r(p);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::euler(Precision p) {
  Interval r(p);
  mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
  mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::width() const {
  Interval r(precision());
  mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

std::string Interval::lower_string(unsigned digits) const { return format_endpoint(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(unsigned digits) const { return format_endpoint(hi_, digits, MPFR_RNDU); }

std::string Interval::to_string(unsigned digits) const {
  return "[" + lower_string(digits) + ", " + upper_string(digits) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(Precision{max_prec(a, b)});
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(Precision{max_prec(a, b)});
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const Precision p{max_prec(a, b)};
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p.bits);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (mpfr_srcptr x : as) {
    for (mpfr_srcptr y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionError("interval division by an enclosure containing zero");
  const Precision p{max_prec(a, b)};
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p.bits);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (mpfr_srcptr x : as) {
    for (mpfr_srcptr y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw PrecisionError("log of an enclosure reaching zero or below");
  Interval r(a.precision());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.precision());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt of an enclosure reaching below zero");
  Interval r(a.precision());
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval square(const Interval& a) {
  const Interval m = abs(a);
  return m * m;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(Precision{max_prec(a, b)});
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, long b) { return a * Interval(a.precision(), b); }
Interval operator/(const Interval& a, long b) { return a / Interval(a.precision(), b); }
Interval operator+(const Interval& a, long b) { return a + Interval(a.precision(), b); }
Interval operator-(const Interval& a, long b) { return a - Interval(a.precision(), b); }

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.upper(), b.lower()) != 0; }

bool less(const Interval& a, const Interval& b) {
  if (certainly_less(a, b)) return true;
  if (mpfr_greaterequal_p(a.lower(), b.upper())) return false;
  throw PrecisionError("comparison undecided: " + a.to_string() + " vs " + b.to_string());
}

Integer floor_lower(const Interval& a) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), a.lower(), MPFR_RNDD);
  return z;
}

Integer ceil_upper(const Interval& a) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), a.upper(), MPFR_RNDU);
  return z;
}

}  // namespace expdio

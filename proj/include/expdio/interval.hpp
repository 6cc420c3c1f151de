#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "expdio/arith.hpp"

namespace expdio {

/// Raised when an enclosure is too wide to decide a comparison.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kDefaultPrecisionDigits = 60;

struct Precision {
  mpfr_prec_t bits = 0;

  /// Enough bits for `digits` significant decimal digits plus 16 guard bits.
  static Precision from_digits(unsigned digits);
  unsigned digits() const;
  Precision doubled() const { return Precision{2 * bits}; }
};

/// m * 10^exp10, kept exact until converted to an enclosure.
struct ScaledDecimal {
  std::int64_t mantissa = 0;
  int exp10 = 0;
};

/// Closed interval [lo, hi] with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(Precision p);
  Interval(Precision p, long value);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_integer(Precision p, const Integer& value);
  static Interval from_rational(Precision p, const Integer& num, const Integer& den);
  static Interval from_decimal(Precision p, const ScaledDecimal& value);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(Precision p);
  static Interval euler(Precision p);

  Precision precision() const { return Precision{mpfr_get_prec(lo_)}; }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  Interval width() const;  // hi - lo, rounded up, as a point-ish enclosure
  bool contains_zero() const;
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }

  // Scientific notation; the lower endpoint rounds down and the upper rounds up.
  std::string lower_string(unsigned digits) const;
  std::string upper_string(unsigned digits) const;
  std::string to_string(unsigned digits = 20) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval square(const Interval& a);
  friend Interval max(const Interval& a, const Interval& b);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval operator*(const Interval& a, long b);
Interval operator/(const Interval& a, long b);
Interval operator+(const Interval& a, long b);
Interval operator-(const Interval& a, long b);

/// True iff every point of a is below every point of b.
bool certainly_less(const Interval& a, const Interval& b);

/// Decides a < b, throwing PrecisionError when the enclosures overlap.
bool less(const Interval& a, const Interval& b);

/// floor(lo) and ceil(hi) as integers.
Integer floor_lower(const Interval& a);
Integer ceil_upper(const Interval& a);

}  // namespace expdio

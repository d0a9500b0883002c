#pragma once

// Closed real intervals with MPFR endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up, so the true value of an
// expression always lies inside the computed interval.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace knorm {

inline constexpr mpfr_prec_t kDefaultIntervalPrecision = 256;  // about 77 decimal digits

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultIntervalPrecision);
  Interval(const mpz_class& v, mpfr_prec_t prec = kDefaultIntervalPrecision);
  Interval(const mpq_class& v, mpfr_prec_t prec = kDefaultIntervalPrecision);
  static Interval from_si(long v, mpfr_prec_t prec = kDefaultIntervalPrecision);
  /// Enclosure of a decimal literal such as "1.5379".
  static Interval from_decimal(const std::string& text, mpfr_prec_t prec = kDefaultIntervalPrecision);
  static Interval log2_const(mpfr_prec_t prec = kDefaultIntervalPrecision);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws InputError when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  /// Natural logarithm; requires a positive lower endpoint.
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  /// a^b = exp(b log a) for a > 0.
  friend Interval pow(const Interval& a, const Interval& b);

  /// Exact rational endpoints.
  mpq_class lower() const;
  mpq_class upper() const;
  /// Endpoint in scientific notation with `digits` significant digits,
  /// rounded outward.
  std::string lower_string(int digits = 30) const;
  std::string upper_string(int digits = 30) const;

  bool certainly_less(const Interval& b) const;     // hi < b.lo
  bool certainly_greater(const Interval& b) const;  // lo > b.hi
  bool certainly_leq(const Interval& b) const;      // hi <= b.lo
  bool certainly_geq(const Interval& b) const;      // lo >= b.hi
  bool contains(const mpq_class& v) const;

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

 private:
  mpfr_t lo_, hi_;
};

}  // namespace knorm

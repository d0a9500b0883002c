#include "knorm/certified.hpp"

#include <algorithm>
#include <string>

#include "knorm/error.hpp"

namespace knorm {

namespace {

mpfr_prec_t joint_prec(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

std::string endpoint_string(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*R*e", digits - 1, rnd, x);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const mpz_class& v, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& v, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_si(long v, mpfr_prec_t prec) { return Interval(mpz_class(v), prec); }

Interval Interval::from_decimal(const std::string& text, mpfr_prec_t prec) {
  Interval r(prec);
  detail::check_input(mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) == 0, "malformed decimal '" + text + "'");
  mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU);
  return r;
}

Interval Interval::log2_const(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  mpfr_set_prec(lo_, other.precision());
  mpfr_set_prec(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
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

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = joint_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  detail::check_input(mpfr_sgn(b.lo_) > 0 || mpfr_sgn(b.hi_) < 0, "interval division by an interval containing zero");
  Interval inv(b.precision());
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval log(const Interval& a) {
  detail::check_input(mpfr_sgn(a.lo_) > 0, "logarithm of an interval that is not positive");
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

Interval pow(const Interval& a, const Interval& b) { return exp(b * log(a)); }

mpq_class Interval::lower() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::upper() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

std::string Interval::lower_string(int digits) const { return endpoint_string(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return endpoint_string(hi_, digits, MPFR_RNDU); }

bool Interval::certainly_less(const Interval& b) const { return mpfr_less_p(hi_, b.lo_); }
bool Interval::certainly_greater(const Interval& b) const { return mpfr_greater_p(lo_, b.hi_); }
bool Interval::certainly_leq(const Interval& b) const { return mpfr_lessequal_p(hi_, b.lo_); }
bool Interval::certainly_geq(const Interval& b) const { return mpfr_greaterequal_p(lo_, b.hi_); }

bool Interval::contains(const mpq_class& v) const { return lower() <= v && v <= upper(); }

}  // namespace knorm

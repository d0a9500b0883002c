#pragma once

// Existence criteria for primitive k-normal elements and the analytic
// bounds that feed them. Every verdict is an exact integer comparison;
// real numbers appear only in the interval evaluations of the divisor
// bound and of h(n, q).

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "knorm/certified.hpp"
#include "knorm/field.hpp"
#include "knorm/integer.hpp"

namespace knorm {

/// W(m) = 2^(number of distinct primes of m).
mpz_class squarefree_divisor_count_int(const FactoredInt& m);

struct SieveReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned k = 0;
  mpz_class W_int;   // W(q^n - 1)
  mpz_class W_poly;  // W(x^n - 1)
  /// q^{n-2k} >= (W_int W_poly)^2.
  bool verdict = false;
  /// x^n - 1 has a divisor of degree k. The sieve argument counts images
  /// L_f(w) for such a divisor f, so a true verdict only yields elements
  /// when this holds as well.
  bool divisor_exists = false;
  /// theta(q^n-1) Theta(x^n-1) (q^n - U W_int W_poly), U = ceil(q^{n/2+k}).
  mpq_class nf_lower_bound;
  mpq_class theta;  // phi(q^n-1)/(q^n-1)
  mpq_class Theta;  // Phi(x^n-1)/q^n

  bool conclusive() const { return verdict && divisor_exists; }
};

/// Requires 1 <= k <= n-1. W(x^n - 1) and Phi(x^n - 1) come from the
/// cyclotomic coset structure.
SieveReport sieve_verdict(std::uint64_t q, unsigned n, unsigned k, const FactoredInt& qn_minus_1);
SieveReport sieve_verdict(const FieldContext& ctx, unsigned k);

/// (W(T) W(q^n-1))^2 < q^{n-2} for T = (x^n-1)/(x-1). Requires p not
/// dividing n.
bool sieve_1normal(std::uint64_t q, unsigned n, const FactoredInt& qn_minus_1);
bool sieve_1normal(const FieldContext& ctx);

struct DivisorBound {
  mpz_class d;
  /// d <= m^{1.5379 log 2 / log log m}.
  bool holds = false;
  /// d < m^{1.06 / log log m}.
  bool holds_106 = false;
  /// Both comparisons were decided by separated intervals.
  bool certified = false;
};

/// Requires m >= 3.
DivisorBound divisor_bound_check(const FactoredInt& m);
/// Same with d = d(m) supplied by the caller.
DivisorBound divisor_bound_check(const mpz_class& m, const mpz_class& d);

struct PowerOfTwoBound {
  mpz_class W;  // W(q^{2^t} - 1)
  /// W^{t-1} < 2^{t-1} q^{2^t}.
  bool holds = false;
};

/// q odd with q >= 3, t >= 2.
PowerOfTwoBound power_of_two_bound_check(std::uint64_t q, unsigned t, const FactorOptions& options = {});

struct HMargin {
  /// Enclosure of h = 1/2 - 1.06/log log(q^n - 1) - log 2/log q.
  Interval h;
  /// floor(n h) clamped at 0, from the lower endpoint.
  long k_max = 0;
  /// The floor is not settled by the enclosure.
  bool indeterminate = false;
};

/// Natural logarithms throughout. q is any integer >= 2; requires
/// log log(q^n - 1) > 0.
HMargin h_margin(const mpz_class& q, unsigned long n, mpfr_prec_t prec = kDefaultIntervalPrecision);

}  // namespace knorm

#include "knorm/sieve.hpp"

#include <algorithm>

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"

namespace knorm {

namespace {

struct PolyShapeData {
  mpz_class W;
  mpz_class Phi;
  std::vector<bool> coverage;
};

PolyShapeData shape_data(std::uint64_t q, unsigned n) {
  const auto shape = xn_minus_1_shape(q, n);
  PolyShapeData out;
  mpz_ui_pow_ui(out.W.get_mpz_t(), 2, shape.size());
  out.Phi = 1;
  const mpz_class Q(std::to_string(q));
  for (const auto& s : shape) out.Phi *= pow_ui(Q, s.degree * s.multiplicity) - pow_ui(Q, s.degree * (s.multiplicity - 1));
  out.coverage = degree_coverage(shape);
  return out;
}

mpz_class ceil_sqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) ++r;
  return r;
}

void check_qn(std::uint64_t q, unsigned n, const FactoredInt& qn_minus_1) {
  detail::check_input(prime_power_decompose(q).has_value(), std::to_string(q) + " is not a prime power");
  detail::check_input(n >= 1, "n must be >= 1");
  detail::check_input(qn_minus_1.value() == pow_ui(mpz_class(std::to_string(q)), n) - 1,
                      "supplied factorization is not of q^n - 1");
}

}  // namespace

mpz_class squarefree_divisor_count_int(const FactoredInt& m) {
  mpz_class w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, m.distinct_primes());
  return w;
}

SieveReport sieve_verdict(std::uint64_t q, unsigned n, unsigned k, const FactoredInt& qn_minus_1) {
  check_qn(q, n, qn_minus_1);
  detail::check_input(k >= 1 && k + 1 <= n, "k = " + std::to_string(k) + " outside 1..n-1 for n = " + std::to_string(n));
  const PolyShapeData poly = shape_data(q, n);
  const mpz_class Q(std::to_string(q));
  const mpz_class qn = pow_ui(Q, n);

  SieveReport r;
  r.q = q;
  r.n = n;
  r.k = k;
  r.W_int = squarefree_divisor_count_int(qn_minus_1);
  r.W_poly = poly.W;
  const mpz_class ww = r.W_int * r.W_poly;
  r.verdict = n >= 2 * k ? pow_ui(Q, n - 2 * k) >= ww * ww : false;
  r.divisor_exists = poly.coverage[k];
  r.theta = mpq_class(euler_phi(qn_minus_1), qn_minus_1.value());
  r.theta.canonicalize();
  r.Theta = mpq_class(poly.Phi, qn);
  r.Theta.canonicalize();
  const mpz_class U = ceil_sqrt(pow_ui(Q, n + 2 * k));
  r.nf_lower_bound = r.theta * r.Theta * mpq_class(qn - U * ww);
  r.nf_lower_bound.canonicalize();
  return r;
}

SieveReport sieve_verdict(const FieldContext& ctx, unsigned k) {
  detail::check_input(k >= 1 && k + 1 <= ctx.n(), "k = " + std::to_string(k) + " outside 1..n-1 for n = " + std::to_string(ctx.n()));
  return sieve_verdict(ctx.q(), ctx.n(), k, ctx.qn_minus_1());
}

bool sieve_1normal(std::uint64_t q, unsigned n, const FactoredInt& qn_minus_1) {
  check_qn(q, n, qn_minus_1);
  const auto p = prime_power_decompose(q)->first;
  detail::check_input(n % p != 0, "p = " + std::to_string(p) + " divides n = " + std::to_string(n));
  detail::check_input(n >= 2, "n must be >= 2");
  const auto shape = xn_minus_1_shape(q, n);
  // T = (x^n - 1)/(x - 1) loses the single linear factor x - 1.
  mpz_class wt;
  mpz_ui_pow_ui(wt.get_mpz_t(), 2, shape.size() - 1);
  const mpz_class lhs = wt * squarefree_divisor_count_int(qn_minus_1);
  return lhs * lhs < pow_ui(mpz_class(std::to_string(q)), n - 2);
}

bool sieve_1normal(const FieldContext& ctx) { return sieve_1normal(ctx.q(), ctx.n(), ctx.qn_minus_1()); }

DivisorBound divisor_bound_check(const mpz_class& m, const mpz_class& d) {
  detail::check_input(m >= 3, "divisor bound needs m >= 3");
  detail::check_input(d >= 1, "divisor count must be positive");
  // Compare log d with c log m / log log m.
  const Interval logm = log(Interval(m));
  const Interval ratio = logm / log(logm);
  const Interval logd = log(Interval(d));
  const Interval c1 = Interval::from_decimal("1.5379") * Interval::log2_const();
  const Interval c2 = Interval::from_decimal("1.06");
  const Interval b1 = c1 * ratio, b2 = c2 * ratio;

  DivisorBound out;
  out.d = d;
  bool ok1 = true, ok2 = true;
  if (logd.certainly_leq(b1)) out.holds = true;
  else if (logd.certainly_greater(b1)) out.holds = false;
  else ok1 = false;
  if (logd.certainly_less(b2)) out.holds_106 = true;
  else if (logd.certainly_geq(b2)) out.holds_106 = false;
  else ok2 = false;
  // d = 1 has log d = 0 exactly; the bounds are positive, so both hold.
  if (d == 1) {
    out.holds = out.holds_106 = true;
    ok1 = ok2 = true;
  }
  out.certified = ok1 && ok2;
  return out;
}

DivisorBound divisor_bound_check(const FactoredInt& m) { return divisor_bound_check(m.value(), divisor_count(m)); }

PowerOfTwoBound power_of_two_bound_check(std::uint64_t q, unsigned t, const FactorOptions& options) {
  detail::check_input(q >= 3 && q % 2 == 1 && prime_power_decompose(q).has_value(), "q must be an odd prime power >= 3");
  detail::check_input(t >= 2 && t <= 16, "t must lie in 2..16");
  const mpz_class Q(std::to_string(q));
  const unsigned long e = 1ul << t;
  const FactoredInt f = factor_integer(pow_ui(Q, e) - 1, options);
  PowerOfTwoBound out;
  out.W = squarefree_divisor_count_int(f);
  out.holds = pow_ui(out.W, t - 1) < pow_ui(mpz_class(2), t - 1) * pow_ui(Q, e);
  return out;
}

HMargin h_margin(const mpz_class& q, unsigned long n, mpfr_prec_t prec) {
  detail::check_input(q >= 2, "q must be >= 2");
  detail::check_input(n >= 1, "n must be >= 1");
  const mpz_class qn1 = pow_ui(q, n) - 1;
  // log log x > 0 iff x > e; q^n - 1 >= 3 suffices.
  detail::check_input(qn1 >= 3, "h(n, q) needs log log(q^n - 1) > 0");
  const Interval loglog = log(log(Interval(qn1, prec)));
  const Interval half(mpq_class(1, 2), prec);
  const Interval h = half - Interval::from_decimal("1.06", prec) / loglog - Interval::log2_const(prec) / log(Interval(q, prec));

  HMargin out{h, 0, false};
  const mpq_class lo = h.lower() * static_cast<unsigned long>(n);
  const mpq_class hi = h.upper() * static_cast<unsigned long>(n);
  auto floor_q = [](const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
  };
  const mpz_class flo = floor_q(lo), fhi = floor_q(hi);
  // Below 1 the clamped answer is 0 whatever the exact floor is.
  if (fhi <= 0) {
    out.k_max = 0;
    return out;
  }
  out.k_max = std::max(0l, flo.get_si());
  out.indeterminate = flo != fhi;
  return out;
}

}  // namespace knorm

#include "knorm/conjecture.hpp"

#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/knormal.hpp"

namespace knorm {

namespace {

// Order of a from a known factorization of the group order.
mpz_class order_from(const FieldContext& ctx, const FFElement& a, const FactoredInt& group) {
  mpz_class t = group.value();
  const FFElement one = ctx.one();
  for (const auto& [r, e] : group.factors()) {
    for (unsigned i = 0; i < e; ++i) {
      const mpz_class cand = t / r;
      if (!(ctx.pow(a, cand) == one)) break;
      t = cand;
    }
  }
  return t;
}

}  // namespace

bool ArtinSchreierReport::all_hold() const {
  if (untested || instances.empty()) return false;
  for (const auto& inst : instances)
    if (!inst.holds(p)) return false;
  return true;
}

std::vector<std::uint32_t> primitive_roots_mod(std::uint32_t p) {
  detail::check_input(p >= 2 && is_probable_prime(mpz_class(p)), std::to_string(p) + " is not prime");
  const auto primes = factor_small(p - 1);
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 1; a < p; ++a) {
    bool ok = true;
    for (auto [r, e] : primes) {
      mpz_class t;
      mpz_class base(a), mod(p);
      mpz_powm_ui(t.get_mpz_t(), base.get_mpz_t(), (p - 1) / r, mod.get_mpz_t());
      if (t == 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

ArtinSchreierReport artin_schreier_check(std::uint32_t p, const FactorOptions& options) {
  detail::check_input(p >= 3, "p must be an odd prime (the property concerns n = p > 2)");
  detail::check_input(is_probable_prime(mpz_class(p)), std::to_string(p) + " is not prime");
  detail::check_input(p <= 1000, "p = " + std::to_string(p) + " is beyond the supported range");

  ArtinSchreierReport rep;
  rep.p = p;
  try {
    rep.group_order = factor_integer(pow_ui(mpz_class(p), p) - 1, options);
  } catch (const BudgetExceeded& e) {
    rep.untested = true;
    rep.reason = e.what();
    return rep;
  }

  const auto base = BaseField::create(p, 1);
  const FqPoly x_minus_1 = FqPoly::x_minus(base, 1);
  const FqPoly sq = x_minus_1 * x_minus_1;
  for (std::uint32_t a : primitive_roots_mod(p)) {
    std::vector<FqPoly::Elem> c(p + 1, 0);
    c[0] = p - a;
    c[1] = p - 1;
    c[p] = 1;
    const FqPoly f(base, std::move(c));
    ArtinSchreierInstance inst;
    inst.a = a;
    inst.irreducible = is_irreducible(f);
    // t^p - t vanishes on F_p, so no root lies in F_p; an Artin-Schreier
    // polynomial without roots is irreducible.
    if (!inst.irreducible) detail::internal_failure("x^p - x - a reducible for a = " + std::to_string(a));
    const FieldPtr ctx = build_extension(base, f);
    const FFElement alpha = ctx->v();
    inst.order_is_square = q_associate(*ctx, sq, alpha).is_zero() && !q_associate(*ctx, x_minus_1, alpha).is_zero();
    inst.k_normality = normality_index(*ctx, alpha);
    inst.order = order_from(*ctx, alpha, *rep.group_order);
    inst.primitive = inst.order == rep.group_order->value();
    inst.order_factors = factor_integer(inst.order, options);
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

}  // namespace knorm

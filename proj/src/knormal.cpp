#include "knorm/knormal.hpp"

#include <random>

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"

namespace knorm {

namespace {

using Elem = BaseField::Elem;

// Conjugates a^{q^i}, i < n, reused for every L_h evaluation.
class ConjugateTable {
 public:
  ConjugateTable(const FieldContext& ctx, const FFElement& a) : ctx_(ctx), conj_(ctx.conjugates(a, ctx.n())) {}

  bool annihilates(const FqPoly& h) const { return apply(h).is_zero(); }

  FFElement apply(const FqPoly& h) const {
    const BaseField& F = ctx_.base();
    const unsigned n = ctx_.n();
    FFElement acc = ctx_.zero();
    const auto& c = h.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      const auto& src = conj_[i % n].coeffs;
      for (unsigned j = 0; j < n; ++j) acc.coeffs[j] = F.add(acc.coeffs[j], F.mul(c[i], src[j]));
    }
    return acc;
  }

 private:
  const FieldContext& ctx_;
  std::vector<FFElement> conj_;
};

FqPoly peel(const ConjugateTable& table, const FactoredPoly& ambient) {
  FqPoly g = ambient.expand();
  for (const auto& fac : ambient.factors()) {
    for (unsigned i = 0; i < fac.multiplicity; ++i) {
      FqPoly cand = exact_div(g, fac.poly);
      if (!table.annihilates(cand)) break;
      g = std::move(cand);
    }
  }
  return g;
}

void require_enumerable(const FieldContext& ctx, std::uint64_t cap) {
  if (!ctx.size_u64() || *ctx.size_u64() > cap)
    throw BudgetExceeded("field of size " + ctx.size().get_str() + " exceeds enumeration cap " + std::to_string(cap));
}

// Dense times the sparse q-associate of g.
std::vector<Elem> mul_by_linearized(const BaseField& F, const std::vector<Elem>& dense, const FqPoly& g,
                                    const std::vector<std::uint64_t>& qpow) {
  const std::size_t lg = qpow[static_cast<std::size_t>(g.degree())];
  std::vector<Elem> out(dense.size() + lg, 0);
  for (std::size_t t = 0; t < g.coeffs().size(); ++t) {
    const Elem c = g.coeffs()[t];
    if (!c) continue;
    const std::size_t shift = qpow[t];
    for (std::size_t j = 0; j < dense.size(); ++j)
      if (dense[j]) out[j + shift] = F.add(out[j + shift], F.mul(dense[j], c));
  }
  return out;
}

// Exact division by the monic sparse q-associate of g.
std::vector<Elem> div_by_linearized(const BaseField& F, std::vector<Elem> num, const FqPoly& g,
                                    const std::vector<std::uint64_t>& qpow) {
  while (!num.empty() && num.back() == 0) num.pop_back();
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  const std::size_t lead = qpow[dg];
  if (num.size() < lead + 1) detail::internal_failure("psi_poly: numerator degree below divisor degree");
  std::vector<Elem> quot(num.size() - lead, 0);
  for (std::size_t i = num.size(); i-- > lead;) {
    const Elem c = num[i];
    if (!c) continue;
    quot[i - lead] = c;
    for (std::size_t t = 0; t < dg; ++t) {
      const Elem gt = g.coeffs()[t];
      if (!gt) continue;
      const std::size_t pos = i - lead + qpow[t];
      num[pos] = F.sub(num[pos], F.mul(c, gt));
    }
    num[i] = 0;
  }
  for (std::size_t i = 0; i < lead; ++i)
    if (num[i]) detail::internal_failure("psi_poly: nonzero remainder in exact division");
  return quot;
}

}  // namespace

void require_divisor_of_xn_minus_1(const FieldContext& ctx, const FqPoly& f) {
  detail::check_input(*f.field_ptr() == ctx.base(), "polynomial is over a different base field");
  detail::check_input(f.is_monic(), "polynomial " + to_string(f) + " is not monic");
  detail::check_input(divides(f, FqPoly::xn_minus_1(ctx.base_ptr(), ctx.n())),
                      to_string(f) + " does not divide x^" + std::to_string(ctx.n()) + " - 1");
}

FFElement q_associate(const FieldContext& ctx, const FqPoly& f, const FFElement& a) {
  ctx.validate(a);
  detail::check_input(*f.field_ptr() == ctx.base(), "polynomial is over a different base field");
  const BaseField& F = ctx.base();
  FFElement acc = ctx.zero();
  FFElement conj = a;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0) conj = ctx.frobenius_once(conj);
    const Elem c = f.coeffs()[i];
    if (!c) continue;
    for (unsigned j = 0; j < ctx.n(); ++j) acc.coeffs[j] = F.add(acc.coeffs[j], F.mul(c, conj.coeffs[j]));
  }
  return acc;
}

FqPoly linearized_poly(const FqPoly& f, std::uint64_t max_degree) {
  if (f.is_zero()) return f;
  const std::uint64_t q = f.field().q();
  std::vector<std::uint64_t> qpow{1};
  for (int i = 0; i < f.degree(); ++i) {
    if (qpow.back() > max_degree / q) throw BudgetExceeded("q-associate degree exceeds " + std::to_string(max_degree));
    qpow.push_back(qpow.back() * q);
  }
  std::vector<Elem> c(qpow.back() + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[qpow[i]] = f.coeffs()[i];
  return FqPoly(f.field_ptr(), std::move(c));
}

FqPoly fq_order(const FieldContext& ctx, const FFElement& a) {
  ctx.validate(a);
  return peel(ConjugateTable(ctx, a), ctx.xn_minus_1());
}

FqPoly fq_order_within(const FieldContext& ctx, const FFElement& a, const FactoredPoly& ambient) {
  ctx.validate(a);
  detail::check_input(*ambient.field_ptr() == ctx.base(), "annihilator is over a different base field");
  const ConjugateTable table(ctx, a);
  detail::check_input(table.annihilates(ambient.expand()), "element is not annihilated by the given ambient polynomial");
  return peel(table, ambient);
}

unsigned normality_index(const FieldContext& ctx, const FFElement& a) {
  return ctx.n() - static_cast<unsigned>(fq_order(ctx, a).degree());
}

bool is_normal(const FieldContext& ctx, const FFElement& a) {
  ctx.validate(a);
  const auto& xn = ctx.xn_minus_1();
  const FqPoly full = xn.expand();
  const ConjugateTable table(ctx, a);
  for (const auto& fac : xn.factors()) {
    if (table.annihilates(exact_div(full, fac.poly))) return false;
  }
  return true;
}

OrderProfile order_profile(const FieldContext& ctx, const FFElement& a) {
  FqPoly m = fq_order(ctx, a);
  const unsigned k = ctx.n() - static_cast<unsigned>(m.degree());
  return OrderProfile{a, std::move(m), k, is_primitive(ctx, a)};
}

mpz_class count_k_normals(const FieldContext& ctx, unsigned k) { return count_k_normals(ctx.xn_minus_1(), k); }

mpz_class count_k_normals(const FactoredPoly& xn, unsigned k) {
  const unsigned n = xn.degree();
  detail::check_input(k <= n, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  mpz_class total = 0;
  for (const auto& e : divisor_exponents_of_degree(xn, n - k)) total += euler_phi_poly(xn.sub_factorization(e));
  return total;
}

FFElement find_normal(const FieldContext& ctx, std::uint64_t seed, std::uint64_t cap) {
  constexpr int kSamples = 4096;
  std::mt19937_64 rng(seed);
  FFElement a = ctx.zero();
  for (int s = 0; s < kSamples; ++s) {
    for (auto& c : a.coeffs) c = static_cast<Elem>(rng() % ctx.q());
    if (is_normal(ctx, a)) return a;
  }
  require_enumerable(ctx, cap);
  for (std::uint64_t idx = 0; idx < *ctx.size_u64(); ++idx) {
    a = ctx.from_index(idx);
    if (is_normal(ctx, a)) return a;
  }
  detail::internal_failure("field has no normal element");
}

FFElement construct_k_normal(const FieldContext& ctx, const FFElement& beta, const FqPoly& f) {
  require_divisor_of_xn_minus_1(ctx, f);
  detail::check_input(is_normal(ctx, beta), "beta is not a normal element");
  FFElement alpha = q_associate(ctx, f, beta);
  const FqPoly expected = exact_div(FqPoly::xn_minus_1(ctx.base_ptr(), ctx.n()), f);
  if (!(fq_order(ctx, alpha) == expected))
    detail::internal_failure("construct_k_normal: F_q-order differs from (x^n - 1)/f for f = " + to_string(f));
  return alpha;
}

FqPoly psi_poly(const FieldContext& ctx, const FqPoly& f, std::uint64_t degree_cap) {
  require_divisor_of_xn_minus_1(ctx, f);
  const FactoredPoly& xn = ctx.xn_minus_1();
  const FactoredPoly ff = xn.sub_factorization(xn.exponents_of(f));
  const mpz_class phi = euler_phi_poly(ff);
  if (phi > degree_cap) throw BudgetExceeded("Psi_f degree " + phi.get_str() + " exceeds cap " + std::to_string(degree_cap));

  const BaseField& F = ctx.base();
  constexpr std::uint64_t kWorkCap = std::uint64_t{1} << 26;
  std::vector<std::uint64_t> qpow{1};
  for (int i = 0; i < f.degree(); ++i) {
    if (qpow.back() > kWorkCap / F.q()) throw BudgetExceeded("q-associate degree too large for Psi_f");
    qpow.push_back(qpow.back() * F.q());
  }

  // g = f / s over squarefree s | f, with mu(f/g) = mu(s) = (-1)^{|s|}.
  const auto& fac = ff.factors();
  const std::size_t r = fac.size();
  std::vector<Elem> numerator{1};
  std::vector<FqPoly> denominators;
  std::uint64_t num_degree = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    FqPoly g = f;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) g = exact_div(g, fac[i].poly);
    if (std::popcount(mask) % 2 == 0) {
      num_degree += qpow[static_cast<std::size_t>(g.degree())];
      if (num_degree > kWorkCap) throw BudgetExceeded("Psi_f numerator degree too large");
      numerator = mul_by_linearized(F, numerator, g, qpow);
    } else {
      denominators.push_back(std::move(g));
    }
  }
  for (const auto& g : denominators) numerator = div_by_linearized(F, std::move(numerator), g, qpow);
  FqPoly psi(ctx.base_ptr(), std::move(numerator));
  if (mpz_class(static_cast<unsigned long>(psi.degree())) != phi)
    detail::internal_failure("psi_poly: degree " + std::to_string(psi.degree()) + " differs from Phi(f) = " + phi.get_str());
  return psi.monic();
}

FqPoly lambda_poly(const FieldContext& ctx, unsigned k, std::uint64_t degree_cap) {
  detail::check_input(k <= ctx.n(), "k = " + std::to_string(k) + " exceeds n = " + std::to_string(ctx.n()));
  const mpz_class nk = count_k_normals(ctx, k);
  if (nk > degree_cap) throw BudgetExceeded("Lambda_k degree " + nk.get_str() + " exceeds cap " + std::to_string(degree_cap));
  FqPoly result = FqPoly::constant(ctx.base_ptr(), 1);
  for (const auto& f : divisors_of_degree(ctx.xn_minus_1(), ctx.n() - k)) result *= psi_poly(ctx, f, degree_cap);
  return result;
}

std::vector<FFElement> enumerate_by_order(const FieldContext& ctx, const FqPoly& f, std::uint64_t cap) {
  require_divisor_of_xn_minus_1(ctx, f);
  require_enumerable(ctx, cap);
  std::vector<FFElement> out;
  for (std::uint64_t idx = 0; idx < *ctx.size_u64(); ++idx) {
    FFElement a = ctx.from_index(idx);
    if (fq_order(ctx, a) == f) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace knorm

#include "knorm/trace_construct.hpp"

#include <optional>
#include <random>

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"
#include "knorm/knormal.hpp"

namespace knorm {

namespace {

using Elem = FieldContext::Elem;

struct Setup {
  unsigned ps;
  FactoredPoly ambient;  // x^{ps} - 1
  FqPoly sub_target;     // (x^{ps} - 1)/f
  FqPoly full_target;    // (x^n - 1)/f
};

Setup check_setup(const FieldContext& ctx, unsigned s, const FqPoly& f) {
  const unsigned p = ctx.p();
  detail::check_input(s >= 1, "s must be >= 1");
  detail::check_input(ctx.n() == p * p * s,
                      "n = " + std::to_string(ctx.n()) + " is not p^2 s = " + std::to_string(p * p * s));
  detail::check_input(*f.field_ptr() == ctx.base(), "polynomial is over a different base field");
  detail::check_input(f.is_monic(), "f must be monic");
  detail::check_input(divides(f, FqPoly::xn_minus_1(ctx.base_ptr(), s)), to_string(f) + " does not divide x^s - 1");
  const unsigned ps = p * s;
  return Setup{ps, factor_xn_minus_1(ctx.base_ptr(), ps), exact_div(FqPoly::xn_minus_1(ctx.base_ptr(), ps), f),
               exact_div(FqPoly::xn_minus_1(ctx.base_ptr(), ctx.n()), f)};
}

FFElement partial_trace(const FieldContext& ctx, const FFElement& a, unsigned step, unsigned terms) {
  FFElement acc = ctx.zero(), cur = a;
  for (unsigned j = 0; j < terms; ++j) {
    if (j) cur = frobenius(ctx, cur, step);
    acc = ctx.add(acc, cur);
  }
  return acc;
}

// Solution set of the linear system T x = b over F_q.
struct AffineSpace {
  std::vector<Elem> particular;
  std::vector<std::vector<Elem>> kernel;
};

std::optional<AffineSpace> solve(const BaseField& F, std::vector<std::vector<Elem>> rows, std::vector<Elem> rhs) {
  const std::size_t m = rows.size(), n = m ? rows[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t sel = r;
    while (sel < m && rows[sel][c] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[r]);
    std::swap(rhs[sel], rhs[r]);
    const Elem inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    rhs[r] = F.mul(rhs[r], inv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Elem t = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(t, rows[r][j]));
      rhs[i] = F.sub(rhs[i], F.mul(t, rhs[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i]) return std::nullopt;

  AffineSpace out;
  out.particular.assign(n, 0);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < r; ++i) {
    out.particular[pivot_col[i]] = rhs[i];
    is_pivot[pivot_col[i]] = true;
  }
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Elem> z(n, 0);
    z[fc] = 1;
    for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = F.neg(rows[i][fc]);
    out.kernel.push_back(std::move(z));
  }
  return out;
}

// Trace fiber over b as an affine space in power basis coordinates.
AffineSpace trace_fiber(const FieldContext& ctx, unsigned m, const FFElement& b) {
  const unsigned n = ctx.n();
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n, 0));
  for (unsigned j = 0; j < n; ++j) {
    FFElement e = ctx.zero();
    e.coeffs[j] = 1;
    const FFElement t = trace_to_subfield(ctx, e, m);
    for (unsigned i = 0; i < n; ++i) rows[i][j] = t.coeffs[i];
  }
  auto sol = solve(ctx.base(), std::move(rows), b.coeffs);
  if (!sol) detail::internal_failure("trace map is not onto the subfield");
  return std::move(*sol);
}

FFElement combine(const FieldContext& ctx, const AffineSpace& sp, const std::vector<Elem>& c) {
  const BaseField& F = ctx.base();
  FFElement a{sp.particular};
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    for (unsigned j = 0; j < ctx.n(); ++j) a.coeffs[j] = F.add(a.coeffs[j], F.mul(c[i], sp.kernel[i][j]));
  }
  return a;
}

LiftResult finish(const FieldContext& ctx, const Setup& st, FFElement alpha, const FFElement& beta, std::uint64_t tries) {
  FqPoly m = fq_order(ctx, alpha);
  mpz_class order = multiplicative_order(ctx, alpha);
  LiftResult out{std::move(alpha), beta, std::move(m), std::move(order), tries};
  if (!(out.fq_order == st.full_target))
    detail::internal_failure("lift_by_trace: F_q-order " + to_string(out.fq_order) + " differs from " + to_string(st.full_target));
  if (out.order != ctx.size() - 1) detail::internal_failure("lift_by_trace: result is not primitive");
  if (!(trace_to_subfield(ctx, out.alpha, st.ps) == beta)) detail::internal_failure("lift_by_trace: result left the fiber");
  return out;
}

}  // namespace

ProjectionResult projection_check(const FieldContext& ctx, unsigned s, const FqPoly& f, std::uint64_t cap, unsigned terms) {
  const Setup st = check_setup(ctx, s, f);
  if (!ctx.size_u64() || *ctx.size_u64() > cap)
    throw BudgetExceeded("projection check over " + ctx.size().get_str() + " elements exceeds cap " + std::to_string(cap));
  if (terms == 0) terms = ctx.p();
  const FqPoly ambient_poly = st.ambient.expand();

  ProjectionResult out;
  for (std::uint64_t idx = 0; idx < *ctx.size_u64(); ++idx) {
    const FFElement a = ctx.from_index(idx);
    const bool lhs = fq_order(ctx, a) == st.full_target;
    const FFElement b = partial_trace(ctx, a, st.ps, terms);
    bool rhs = false;
    if (q_associate(ctx, ambient_poly, b).is_zero()) rhs = fq_order_within(ctx, b, st.ambient) == st.sub_target;
    ++out.checked;
    out.lhs_count += lhs;
    out.rhs_count += rhs;
    out.mismatches += lhs != rhs;
  }
  out.holds = out.mismatches == 0;
  return out;
}

LiftResult lift_by_trace(const FieldContext& ctx, unsigned s, const FqPoly& f, std::uint64_t seed, std::uint64_t sample_budget,
                         std::uint64_t cap) {
  const Setup st = check_setup(ctx, s, f);
  std::mt19937_64 rng(seed);
  const std::uint32_t q = ctx.q();
  auto random_element = [&] {
    FFElement a = ctx.zero();
    for (auto& c : a.coeffs) c = static_cast<Elem>(rng() % q);
    return a;
  };

  // b: projections of random elements always land in F_{q^{ps}}.
  std::optional<FFElement> beta;
  for (std::uint64_t i = 0; i < sample_budget && !beta; ++i) {
    const FFElement b = trace_to_subfield(ctx, random_element(), st.ps);
    if (fq_order_within(ctx, b, st.ambient) == st.sub_target) beta = b;
  }
  if (!beta && ctx.size_u64() && *ctx.size_u64() <= cap) {
    for (std::uint64_t idx = 0; idx < *ctx.size_u64() && !beta; ++idx) {
      const FFElement b = ctx.from_index(idx);
      if (in_subfield(ctx, b, st.ps) && fq_order_within(ctx, b, st.ambient) == st.sub_target) beta = b;
    }
  }
  if (!beta) throw BudgetExceeded("no element of F_q-order " + to_string(st.sub_target) + " found in the subfield");

  const AffineSpace fiber = trace_fiber(ctx, st.ps, *beta);
  const std::size_t dim = fiber.kernel.size();
  std::vector<Elem> c(dim, 0);
  std::uint64_t tries = 0;
  for (std::uint64_t i = 0; i < sample_budget; ++i) {
    for (auto& x : c) x = static_cast<Elem>(rng() % q);
    FFElement a = combine(ctx, fiber, c);
    ++tries;
    if (is_primitive(ctx, a)) return finish(ctx, st, std::move(a), *beta, tries);
  }
  // Whole fiber in order of the kernel coordinates.
  mpz_class fiber_size = pow_ui(mpz_class(q), dim);
  if (fiber_size <= cap) {
    std::fill(c.begin(), c.end(), 0);
    for (std::uint64_t idx = 0; idx < fiber_size.get_ui(); ++idx) {
      std::uint64_t rest = idx;
      for (auto& x : c) {
        x = static_cast<Elem>(rest % q);
        rest /= q;
      }
      FFElement a = combine(ctx, fiber, c);
      ++tries;
      if (is_primitive(ctx, a)) return finish(ctx, st, std::move(a), *beta, tries);
    }
  }
  throw BudgetExceeded("no primitive element found in the trace fiber within budget");
}

std::uint64_t trace_fiber_size(const FieldContext& ctx, unsigned m, const FFElement& b, std::uint64_t cap) {
  ctx.validate(b);
  if (!ctx.size_u64() || *ctx.size_u64() > cap)
    throw BudgetExceeded("fiber count over " + ctx.size().get_str() + " elements exceeds cap " + std::to_string(cap));
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < *ctx.size_u64(); ++idx)
    if (trace_to_subfield(ctx, ctx.from_index(idx), m) == b) ++count;
  return count;
}

}  // namespace knorm

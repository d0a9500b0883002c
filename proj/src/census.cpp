#include "knorm/census.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <thread>

#include "knorm/error.hpp"
#include "knorm/knormal.hpp"

namespace knorm {

namespace {

using Elem = FieldContext::Elem;

template <class Fn>
void run_blocks(std::uint64_t total, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < 4096) {
    fn(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t block = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min(total, t * block), hi = std::min(total, lo + block);
    pool.emplace_back([&fn, lo, hi, t] { fn(lo, hi, t); });
  }
  for (auto& th : pool) th.join();
}

void require_cap(const FieldContext& ctx, std::uint64_t cap) {
  if (!ctx.size_u64() || *ctx.size_u64() > cap)
    throw BudgetExceeded("census of a field with " + ctx.size().get_str() + " elements exceeds cap " + std::to_string(cap));
}

// Krylov elimination over F_q with reusable buffers.
class RankWorker {
 public:
  explicit RankWorker(const FieldContext& ctx)
      : ctx_(ctx), F_(ctx.base()), n_(ctx.n()), rows_(std::size_t{n_} * n_), pivot_(n_), cur_(n_), conj_(n_), next_(n_) {}

  unsigned rank(std::span<const Elem> a) {
    std::copy(a.begin(), a.end(), conj_.begin());
    unsigned r = 0;
    for (unsigned step = 0; step < n_; ++step) {
      std::copy(conj_.begin(), conj_.end(), cur_.begin());
      for (unsigned b = 0; b < r; ++b) {
        const Elem c = cur_[pivot_[b]];
        if (!c) continue;
        const Elem* row = &rows_[std::size_t{b} * n_];
        for (unsigned j = 0; j < n_; ++j)
          if (row[j]) cur_[j] = F_.sub(cur_[j], F_.mul(c, row[j]));
      }
      unsigned piv = n_;
      for (unsigned j = 0; j < n_; ++j)
        if (cur_[j]) {
          piv = j;
          break;
        }
      if (piv == n_) break;
      const Elem s = F_.inv(cur_[piv]);
      Elem* row = &rows_[std::size_t{r} * n_];
      for (unsigned j = 0; j < n_; ++j) row[j] = F_.mul(s, cur_[j]);
      pivot_[r++] = piv;
      ctx_.frobenius_into(conj_, next_);
      std::swap(conj_, next_);
    }
    return r;
  }

 private:
  const FieldContext& ctx_;
  const BaseField& F_;
  unsigned n_;
  std::vector<Elem> rows_;
  std::vector<unsigned> pivot_;
  std::vector<Elem> cur_, conj_, next_;
};

// Over F_2 an element is its index read as a bit mask.
struct Binary {
  unsigned n;
  std::vector<std::uint32_t> frob_cols;

  explicit Binary(const FieldContext& ctx) : n(ctx.n()), frob_cols(n, 0) {
    const auto& fm = ctx.frobenius_matrix();
    for (unsigned j = 0; j < n; ++j)
      for (unsigned i = 0; i < n; ++i)
        if (fm[std::size_t{j} * n + i]) frob_cols[j] |= std::uint32_t{1} << i;
  }

  static std::uint32_t apply(const std::vector<std::uint32_t>& cols, std::uint32_t x) {
    std::uint32_t out = 0;
    while (x) {
      out ^= cols[static_cast<unsigned>(std::countr_zero(x))];
      x &= x - 1;
    }
    return out;
  }

  unsigned rank(std::uint32_t a) const {
    std::uint32_t basis[32] = {};
    unsigned r = 0;
    std::uint32_t conj = a;
    for (unsigned step = 0; step < n; ++step) {
      std::uint32_t x = conj;
      while (x) {
        const int top = 31 - std::countl_zero(x);
        if (!basis[top]) break;
        x ^= basis[top];
      }
      if (!x) break;
      basis[31 - std::countl_zero(x)] = x;
      ++r;
      conj = apply(frob_cols, conj);
    }
    return r;
  }
};

// Coordinates of index idx written into out (base q digits).
void decode(std::uint64_t idx, std::uint32_t q, std::span<Elem> out) {
  for (auto& c : out) {
    c = static_cast<Elem>(idx % q);
    idx /= q;
  }
}

std::uint64_t encode(std::span<const Elem> c, std::uint32_t q) {
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) idx = idx * q + c[i];
  return idx;
}

// Column j of the matrix of a -> L_f(a) in the power basis.
std::vector<FFElement> associate_columns(const FieldContext& ctx, const FqPoly& f) {
  std::vector<FFElement> cols;
  for (unsigned j = 0; j < ctx.n(); ++j) {
    FFElement e = ctx.zero();
    e.coeffs[j] = 1;
    cols.push_back(q_associate(ctx, f, e));
  }
  return cols;
}

}  // namespace

unsigned conjugate_span_rank(const FieldContext& ctx, const FFElement& a) {
  ctx.validate(a);
  RankWorker w(ctx);
  return w.rank(a.coeffs);
}

std::vector<std::uint8_t> primitive_table(const FieldContext& ctx, std::uint64_t cap) {
  require_cap(ctx, cap);
  const std::uint64_t size = *ctx.size_u64();
  const std::uint64_t group = size - 1;
  const std::uint32_t q = ctx.q();
  const unsigned n = ctx.n();
  std::vector<std::uint8_t> prim(size, 0);
  if (group == 0) return prim;

  std::vector<Elem> scratch, cur(n), tmp(n), g(n);
  const std::uint64_t one_idx = 1;
  // Least index whose cyclic subgroup is everything.
  std::uint64_t gen = 0;
  for (std::uint64_t idx = 1; idx < size && !gen; ++idx) {
    decode(idx, q, g);
    std::copy(g.begin(), g.end(), cur.begin());
    std::uint64_t steps = 1;
    while (encode(cur, q) != one_idx) {
      ctx.mul_into(cur, g, tmp, scratch);
      std::swap(cur, tmp);
      ++steps;
    }
    if (steps == group) gen = idx;
  }
  if (!gen) detail::internal_failure("no generator found in census");

  decode(gen, q, g);
  std::copy(g.begin(), g.end(), cur.begin());
  for (std::uint64_t i = 1; i <= group; ++i) {
    if (std::gcd(i, group) == 1) prim[encode(cur, q)] = 1;
    ctx.mul_into(cur, g, tmp, scratch);
    std::swap(cur, tmp);
  }
  return prim;
}

Census brute_census(const FieldContext& ctx, std::span<const FqPoly> fs, std::uint64_t cap, unsigned threads) {
  require_cap(ctx, cap);
  for (const auto& f : fs) require_divisor_of_xn_minus_1(ctx, f);
  const std::uint64_t size = *ctx.size_u64();
  const std::uint32_t q = ctx.q();
  const unsigned n = ctx.n();
  threads = std::max(1u, threads);

  std::vector<std::uint8_t> kidx(size);
  if (q == 2) {
    const Binary bin(ctx);
    run_blocks(size, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
      for (std::uint64_t i = lo; i < hi; ++i) kidx[i] = static_cast<std::uint8_t>(n - bin.rank(static_cast<std::uint32_t>(i)));
    });
  } else {
    run_blocks(size, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
      RankWorker w(ctx);
      std::vector<Elem> a(n);
      for (std::uint64_t i = lo; i < hi; ++i) {
        decode(i, q, a);
        kidx[i] = static_cast<std::uint8_t>(n - w.rank(a));
      }
    });
  }
  const std::vector<std::uint8_t> prim = primitive_table(ctx, cap);

  Census c;
  c.q = q;
  c.n = n;
  c.size = size;
  c.n_k.assign(n + 1, 0);
  c.primitive_k.assign(n + 1, 0);
  for (std::uint64_t i = 0; i < size; ++i) {
    ++c.n_k[kidx[i]];
    if (prim[i]) ++c.primitive_k[kidx[i]];
  }

  for (const auto& f : fs) {
    const auto cols = associate_columns(ctx, f);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::vector<std::uint64_t>> seen(threads);
    run_blocks(size, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned t) {
      auto& bits = seen[t];
      bits.assign((size + 63) / 64, 0);
      std::vector<Elem> a(n), img(n);
      std::uint64_t count = 0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (kidx[i] != 0) continue;
        decode(i, q, a);
        std::fill(img.begin(), img.end(), 0);
        const BaseField& F = ctx.base();
        for (unsigned j = 0; j < n; ++j) {
          if (!a[j]) continue;
          for (unsigned r = 0; r < n; ++r) img[r] = F.add(img[r], F.mul(a[j], cols[j].coeffs[r]));
        }
        const std::uint64_t im = encode(img, q);
        if (prim[im]) {
          ++count;
          bits[im / 64] |= std::uint64_t{1} << (im % 64);
        }
      }
      partial[t] = count;
    });
    CensusNf rec{f, 0, 0};
    std::vector<std::uint64_t> merged((size + 63) / 64, 0);
    for (unsigned t = 0; t < threads; ++t) {
      rec.n_f += partial[t];
      for (std::size_t w = 0; w < seen[t].size(); ++w) merged[w] |= seen[t][w];
    }
    for (auto w : merged) rec.distinct_images += static_cast<std::uint64_t>(std::popcount(w));
    c.nf.push_back(std::move(rec));
  }
  return c;
}

}  // namespace knorm

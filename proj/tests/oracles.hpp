#pragma once

// Brute force reference implementations used only by the tests. They share
// the element and polynomial arithmetic with the library but none of its
// algorithms.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "knorm/field.hpp"
#include "knorm/fq_poly.hpp"

namespace oracle {

using knorm::FFElement;
using knorm::FieldContext;
using knorm::FqPoly;

inline std::map<std::uint64_t, unsigned> trial_factor(std::uint64_t m) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      ++out[d];
      m /= d;
    }
  if (m > 1) ++out[m];
  return out;
}

inline bool is_prime_u64(std::uint64_t m) { return m >= 2 && trial_factor(m).begin()->first == m; }

inline std::uint64_t phi_u64(std::uint64_t m) {
  std::uint64_t r = m;
  for (auto [p, e] : trial_factor(m)) r = r / p * (p - 1);
  return r;
}

inline std::vector<std::uint64_t> prime_powers_upto(std::uint64_t qmax) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= qmax; ++q)
    if (trial_factor(q).size() == 1) out.push_back(q);
  return out;
}

inline std::pair<std::uint32_t, unsigned> split_q(std::uint64_t q) {
  auto f = trial_factor(q);
  return {static_cast<std::uint32_t>(f.begin()->first), f.begin()->second};
}

/// Every monic polynomial of the given degree, in index order.
inline std::vector<FqPoly> monic_polys(const knorm::BaseFieldPtr& F, unsigned degree) {
  std::vector<FqPoly> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) count *= F->q();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<knorm::BaseField::Elem> c(degree + 1, 0);
    std::uint64_t r = idx;
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = static_cast<knorm::BaseField::Elem>(r % F->q());
      r /= F->q();
    }
    c[degree] = 1;
    out.emplace_back(F, std::move(c));
  }
  return out;
}

/// Irreducible factorization of a monic polynomial by trial division with
/// every monic polynomial of increasing degree. Returns (factor, multiplicity)
/// sorted by the polynomial order.
inline std::vector<std::pair<FqPoly, unsigned>> trial_factor_poly(FqPoly f) {
  std::map<FqPoly, unsigned> found;
  const auto F = f.field_ptr();
  for (unsigned d = 1; f.degree() >= 1; ++d) {
    if (2 * d > static_cast<unsigned>(f.degree())) {
      ++found[f];  // no factor of degree below d, so f is irreducible
      break;
    }
    for (const auto& g : monic_polys(F, d)) {
      while (true) {
        auto [qq, r] = knorm::divrem(f, g);
        if (!r.is_zero()) break;
        f = qq;
        ++found[g];
      }
    }
  }
  return {found.begin(), found.end()};
}

/// Least t >= 1 with a^t = 1 by repeated multiplication.
inline std::uint64_t brute_order(const FieldContext& ctx, const FFElement& a) {
  FFElement cur = a;
  const FFElement one = ctx.one();
  std::uint64_t t = 1;
  while (!(cur == one)) {
    cur = ctx.mul(cur, a);
    ++t;
  }
  return t;
}

}  // namespace oracle

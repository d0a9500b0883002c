#pragma once

// Exhaustive census of F_{q^n}: normality index and primitivity of every
// element, plus the preimage count n_f for q-associate images.
//
// The census is deliberately independent of fq_order: the normality index
// is n minus the rank of the span of the conjugates (Krylov elimination
// under Frobenius), and primitivity comes from a discrete log table built
// by walking the powers of one generator.

#include <cstdint>
#include <span>
#include <vector>

#include "knorm/field.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/limits.hpp"

namespace knorm {

struct CensusNf {
  FqPoly f;
  /// #{w normal : L_f(w) primitive}, counted over preimages w.
  std::uint64_t n_f = 0;
  /// Number of distinct primitive elements L_f(w), w normal.
  std::uint64_t distinct_images = 0;
};

struct Census {
  std::uint32_t q = 0;
  unsigned n = 0;
  std::uint64_t size = 0;
  /// Indexed by k = 0..n.
  std::vector<std::uint64_t> n_k;
  std::vector<std::uint64_t> primitive_k;
  std::vector<CensusNf> nf;
};

/// dim_{F_q} span{a, a^q, a^{q^2}, ...}; equals deg m_a.
unsigned conjugate_span_rank(const FieldContext& ctx, const FFElement& a);

/// Full pass over F_{q^n}. Each f in fs must divide x^n - 1. The index range
/// is split into contiguous blocks, one per thread, and merged in order.
/// Throws BudgetExceeded when q^n > cap.
Census brute_census(const FieldContext& ctx, std::span<const FqPoly> fs = {}, std::uint64_t cap = kDefaultEnumerationCap,
                    unsigned threads = 1);

/// Primitivity flag for every element index, from a generator's power walk.
std::vector<std::uint8_t> primitive_table(const FieldContext& ctx, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace knorm

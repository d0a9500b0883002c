#pragma once

// Extensions of degree n = p^2 s: the relative trace to F_{q^{ps}} carries
// F_q-orders (x^n - 1)/f to (x^{ps} - 1)/f, which lets a primitive element
// with a prescribed F_q-order be found inside a single trace fiber.

#include <gmpxx.h>

#include <cstdint>

#include "knorm/field.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/limits.hpp"

namespace knorm {

struct ProjectionResult {
  bool holds = false;
  std::uint64_t checked = 0;
  /// #{a : m_a = (x^n - 1)/f}.
  std::uint64_t lhs_count = 0;
  /// #{a : m_b = (x^{ps} - 1)/f for the projected b}.
  std::uint64_t rhs_count = 0;
  std::uint64_t mismatches = 0;
};

/// Exhaustively compares [m_a = (x^n-1)/f] with [m_b = (x^{ps}-1)/f] for
/// b = sum_{i<terms} a^{q^{psi}}, every a in F_{q^n}. terms = 0 means p,
/// the relative trace; other values are accepted so that alternative
/// summation ranges can be tested. An image outside F_{q^{ps}} counts as
/// failing the right hand side.
ProjectionResult projection_check(const FieldContext& ctx, unsigned s, const FqPoly& f,
                                  std::uint64_t cap = kDefaultEnumerationCap, unsigned terms = 0);

struct LiftResult {
  FFElement alpha;
  FFElement beta;
  FqPoly fq_order;
  mpz_class order;
  /// Fiber candidates examined before success.
  std::uint64_t tries = 0;
};

/// Finds b in F_{q^{ps}} with m_b = (x^{ps}-1)/f, then a primitive a in the
/// trace fiber over b: seeded random sampling first, then the whole fiber
/// in order when it has at most cap elements. Postconditions m_a =
/// (x^n-1)/f and a primitive are checked before returning.
/// Throws BudgetExceeded when nothing is found within the budgets.
LiftResult lift_by_trace(const FieldContext& ctx, unsigned s, const FqPoly& f, std::uint64_t seed,
                         std::uint64_t sample_budget = 200'000, std::uint64_t cap = kDefaultEnumerationCap);

/// Number of a with Tr(a) = b, by exhaustion.
std::uint64_t trace_fiber_size(const FieldContext& ctx, unsigned m, const FFElement& b,
                               std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace knorm

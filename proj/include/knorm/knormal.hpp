#pragma once

// q-associates, F_q-orders and k-normal elements of F_{q^n} over F_q.
//
// For f = sum a_i x^i in F_q[x], the q-associate is L_f(x) = sum a_i x^{q^i}
// and f o a = L_f(a). The F_q-order m_a of a is the monic generator of
// {f : L_f(a) = 0}; it divides x^n - 1, and a is k-normal exactly when
// deg m_a = n - k.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "knorm/field.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/limits.hpp"

namespace knorm {

struct OrderProfile {
  FFElement element;
  FqPoly fq_order;
  unsigned k;
  bool is_primitive;
};

/// L_f(a) = sum f_i a^{q^i}.
FFElement q_associate(const FieldContext& ctx, const FqPoly& f, const FFElement& a);

/// L_f as an explicit polynomial over F_q of degree q^{deg f}.
/// Throws BudgetExceeded when that degree exceeds max_degree.
FqPoly linearized_poly(const FqPoly& f, std::uint64_t max_degree = std::uint64_t{1} << 26);

/// m_a by factor peeling: starting from g = x^n - 1, each irreducible P is
/// divided out of g while L_{g/P}(a) = 0.
FqPoly fq_order(const FieldContext& ctx, const FFElement& a);
/// F_q-order relative to an annihilator other than x^n - 1 (for instance
/// x^m - 1 for an element of the subfield F_{q^m}). Throws InputError when
/// L_ambient(a) != 0.
FqPoly fq_order_within(const FieldContext& ctx, const FFElement& a, const FactoredPoly& ambient);

/// n - deg m_a: 0 for normal elements, n for zero.
unsigned normality_index(const FieldContext& ctx, const FFElement& a);
bool is_normal(const FieldContext& ctx, const FFElement& a);
OrderProfile order_profile(const FieldContext& ctx, const FFElement& a);

/// N_k as the sum of Phi(h) over monic h | x^n - 1 with deg h = n - k.
mpz_class count_k_normals(const FieldContext& ctx, unsigned k);
/// Same from a factorization of x^n - 1 alone, without building F_{q^n}.
mpz_class count_k_normals(const FactoredPoly& xn_minus_1, unsigned k);

/// A normal element: seeded random sampling, then an exhaustive scan in
/// index order when q^n <= cap.
FFElement find_normal(const FieldContext& ctx, std::uint64_t seed, std::uint64_t cap = kDefaultEnumerationCap);

/// L_f(beta) for normal beta and monic f | x^n - 1; its F_q-order is
/// (x^n - 1)/f, which is asserted before returning.
FFElement construct_k_normal(const FieldContext& ctx, const FFElement& beta, const FqPoly& f);

/// Psi_f = prod_{g | f} L_g^{mu(f/g)}, the polynomial whose roots are the
/// elements with F_q-order f. Numerator and denominator products are formed
/// explicitly and divided exactly; a nonzero remainder is an InternalError.
/// Throws BudgetExceeded when Phi(f) > degree_cap.
FqPoly psi_poly(const FieldContext& ctx, const FqPoly& f, std::uint64_t degree_cap);

/// Lambda_k = product of Psi_f over divisors f of x^n - 1 of degree n - k;
/// the constant 1 when there are none. Its roots are the k-normals.
FqPoly lambda_poly(const FieldContext& ctx, unsigned k, std::uint64_t degree_cap);

/// All elements with F_q-order f, in index order.
std::vector<FFElement> enumerate_by_order(const FieldContext& ctx, const FqPoly& f,
                                          std::uint64_t cap = kDefaultEnumerationCap);

/// Throws InputError unless f is monic and divides x^n - 1.
void require_divisor_of_xn_minus_1(const FieldContext& ctx, const FqPoly& f);

}  // namespace knorm

#pragma once

// Factorization of x^n - 1 over F_q and the arithmetic functions of
// F_q[x]: Euler phi, Moebius, squarefree divisor count, divisors by degree.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "knorm/base_field.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/limits.hpp"

namespace knorm {

class FieldContext;

/// Cyclotomic cosets {j q^i mod m} partitioning Z/m, each sorted, listed by
/// least element. Requires gcd(q, m) = 1.
std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t m);

/// Degrees and multiplicities of the irreducible factors of x^n - 1 over
/// F_q, read off the coset structure without building any polynomial.
/// Sorted by degree. q must be a prime power.
struct FactorShape {
  unsigned degree;
  unsigned multiplicity;
  friend bool operator==(const FactorShape&, const FactorShape&) = default;
};
std::vector<FactorShape> xn_minus_1_shape(std::uint64_t q, std::uint64_t n);

/// x^n - 1 = (x^m - 1)^{p^t} with n = p^t m, p not dividing m. Each q-coset
/// C of Z/m gives the irreducible prod_{c in C}(x - zeta^c), computed in
/// the extension of degree |C| from a primitive d-th root of unity and
/// checked to have coefficients in F_q.
FactoredPoly factor_xn_minus_1(const BaseFieldPtr& field, unsigned n);
FactoredPoly factor_xn_minus_1(const FieldContext& ctx);

/// |(F_q[x]/(f))^*| = prod over P^m || f of q^{dm} - q^{d(m-1)}.
mpz_class euler_phi_poly(const FactoredPoly& f);
int mobius_poly(const FactoredPoly& f);
/// 2^(number of distinct irreducible factors).
mpz_class count_squarefree_divisors_poly(const FactoredPoly& f);

/// Exponent vectors of all monic divisors of degree exactly k, in
/// lexicographic order of the vectors. Throws BudgetExceeded beyond cap.
std::vector<std::vector<unsigned>> divisor_exponents_of_degree(const FactoredPoly& f, unsigned k,
                                                               std::size_t cap = kDefaultDivisorCap);
/// Monic divisors of degree exactly k, sorted by the FqPoly order.
/// Throws InputError for k > deg f.
std::vector<FqPoly> divisors_of_degree(const FactoredPoly& f, unsigned k, std::size_t cap = kDefaultDivisorCap);
/// Every monic divisor (exponent vectors), all degrees.
std::vector<std::vector<unsigned>> all_divisor_exponents(const FactoredPoly& f, std::size_t cap = kDefaultDivisorCap);

/// Bit d is set iff some monic divisor has degree d (bounded subset sum).
std::vector<bool> degree_coverage(const std::vector<FactorShape>& shape);
/// Sorted list of attainable divisor degrees.
std::vector<unsigned> degree_set(const FactoredPoly& f);

/// Factor shape of an explicit factorization.
std::vector<FactorShape> shape_of(const FactoredPoly& f);

}  // namespace knorm

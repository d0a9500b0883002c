#pragma once

// F_q-practical and phi-practical numbers.

#include <cstdint>
#include <vector>

namespace knorm {

/// Every degree 0..n occurs among the monic divisors of x^n - 1 over F_q.
bool is_fq_practical(std::uint64_t q, std::uint64_t n);

/// Every degree 0..n occurs among the divisors of x^n - 1 in Z[x], i.e. as
/// a subset sum of {phi(d) : d | n}.
bool is_phi_practical(std::uint64_t n);

/// rad(n) divides p(q - 1); when true, n is F_q-practical.
bool practical_family_check(std::uint64_t q, std::uint64_t n);

struct PracticalRow {
  std::uint64_t n;
  bool phi_practical;
  std::vector<bool> fq_practical;  // one per q
};

/// Rows for n = 1..n_max over the given q values.
std::vector<PracticalRow> practical_scan(const std::vector<std::uint64_t>& qs, std::uint64_t n_max);

}  // namespace knorm

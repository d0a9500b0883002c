#include "knorm/practical.hpp"

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"
#include "knorm/integer.hpp"

namespace knorm {

namespace {

constexpr std::uint64_t kMaxN = 1'000'000;

void check_n(std::uint64_t n) {
  detail::check_input(n >= 1, "n must be >= 1");
  detail::check_input(n <= kMaxN, "n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxN));
}

bool covers_all(const std::vector<bool>& cov) {
  for (bool b : cov)
    if (!b) return false;
  return true;
}

}  // namespace

bool is_fq_practical(std::uint64_t q, std::uint64_t n) {
  check_n(n);
  return covers_all(degree_coverage(xn_minus_1_shape(q, n)));
}

bool is_phi_practical(std::uint64_t n) {
  check_n(n);
  std::vector<FactorShape> shape;
  for (auto d : divisors_small(n)) shape.push_back({static_cast<unsigned>(euler_phi_small(d)), 1});
  return covers_all(degree_coverage(shape));
}

bool practical_family_check(std::uint64_t q, std::uint64_t n) {
  check_n(n);
  const auto pe = prime_power_decompose(q);
  detail::check_input(pe.has_value(), std::to_string(q) + " is not a prime power");
  const std::uint64_t m = std::uint64_t{pe->first} * (q - 1);
  for (auto [r, e] : factor_small(n))
    if (m % r != 0) return false;
  return true;
}

std::vector<PracticalRow> practical_scan(const std::vector<std::uint64_t>& qs, std::uint64_t n_max) {
  check_n(n_max);
  for (auto q : qs) detail::check_input(prime_power_decompose(q).has_value(), std::to_string(q) + " is not a prime power");
  std::vector<PracticalRow> rows;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    PracticalRow row{n, is_phi_practical(n), {}};
    for (auto q : qs) row.fq_practical.push_back(is_fq_practical(q, n));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace knorm

#pragma once

// Arbitrary precision integer utilities: primality, complete factorization
// and the arithmetic functions built on a factorization.

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knorm/limits.hpp"

namespace knorm {

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its complete prime factorization.
///
/// Factors are kept sorted by strictly increasing prime; the product of
/// prime^exponent always equals value().
class FactoredInt {
 public:
  FactoredInt() : value_(1) {}

  /// Builds from a factor list and validates it: primes strictly increasing,
  /// each passing is_probable_prime, exponents positive. Throws InputError.
  static FactoredInt from_factors(std::vector<PrimePower> factors);

  const mpz_class& value() const noexcept { return value_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  std::size_t distinct_primes() const noexcept { return factors_.size(); }

  /// Recomputes the product of the stored prime powers.
  mpz_class product() const;

  /// `p1^a1 * p2^a2 * ...`, or `1` for the empty factorization.
  std::string to_string() const;

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  mpz_class value_;
  std::vector<PrimePower> factors_;
};

/// Miller-Rabin: deterministic prime bases for n < 2^64, otherwise 64
/// rounds with bases drawn from a fixed-seed generator.
bool is_probable_prime(const mpz_class& n);

/// Persistent text cache of factorizations, one `value = p1^a1 * p2^a2`
/// line per entry. Malformed or inconsistent lines are rejected and
/// reported through warnings(). Thread safe.
class FactorCache {
 public:
  FactorCache() = default;
  /// Loads `path` if it exists; new factorizations are appended to it.
  explicit FactorCache(std::filesystem::path path);

  std::optional<FactoredInt> lookup(const mpz_class& value) const;
  void store(const FactoredInt& f);

  std::size_t size() const;
  std::vector<std::string> warnings() const;
  const std::filesystem::path& path() const noexcept { return path_; }

  /// Parses one cache line; nullopt (with reason) when malformed.
  static std::optional<FactoredInt> parse_line(std::string_view line, std::string* reason = nullptr);
  static std::string format_line(const FactoredInt& f);

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<mpz_class, FactoredInt> entries_;
  std::vector<std::string> warnings_;
};

/// Process wide cache consulted by factor_integer when none is given
/// explicitly. Null by default.
std::shared_ptr<FactorCache> default_factor_cache();
void set_default_factor_cache(std::shared_ptr<FactorCache> cache);

struct FactorOptions {
  std::uint64_t rho_budget = kDefaultRhoBudget;
  /// Overrides default_factor_cache() when set.
  std::shared_ptr<FactorCache> cache;
  bool use_default_cache = true;
};

/// Complete factorization of m >= 1: trial division by primes below 2^14,
/// then Brent's variant of Pollard rho with deterministic constants, each
/// prime certified by is_probable_prime. Throws BudgetExceeded rather
/// than returning an incomplete answer.
FactoredInt factor_integer(const mpz_class& m, const FactorOptions& options = {});

mpz_class euler_phi(const FactoredInt& m);
mpz_class divisor_count(const FactoredInt& m);

/// Small integer helpers used where values are known to fit in 64 bits.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m);
std::uint64_t euler_phi_small(std::uint64_t m);
std::vector<std::uint64_t> divisors_small(std::uint64_t m);

/// Decomposes q = p^e; nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power_decompose(std::uint64_t q);

mpz_class pow_ui(const mpz_class& base, unsigned long exponent);

}  // namespace knorm

#pragma once

// Roots of x^p - x - a over F_p for primitive roots a mod p: irreducibility,
// F_p-order (x - 1)^2 and primitivity in F_{p^p}.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knorm/integer.hpp"

namespace knorm {

struct ArtinSchreierInstance {
  std::uint32_t a = 0;
  bool irreducible = false;
  /// L_{(x-1)^2}(alpha) = 0 and L_{x-1}(alpha) != 0.
  bool order_is_square = false;
  unsigned k_normality = 0;
  bool primitive = false;
  mpz_class order;
  FactoredInt order_factors;

  bool holds(std::uint32_t p) const { return irreducible && order_is_square && k_normality == p - 2 && primitive; }
};

struct ArtinSchreierReport {
  std::uint32_t p = 0;
  /// Set when p^p - 1 could not be factored within budget.
  bool untested = false;
  std::string reason;
  std::optional<FactoredInt> group_order;  // p^p - 1
  std::vector<ArtinSchreierInstance> instances;

  bool all_hold() const;
};

/// Primitive roots of F_p in increasing order.
std::vector<std::uint32_t> primitive_roots_mod(std::uint32_t p);

/// Checks every primitive root a. p must be an odd prime.
ArtinSchreierReport artin_schreier_check(std::uint32_t p, const FactorOptions& options = {});

}  // namespace knorm

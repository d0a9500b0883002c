#pragma once

#include <cstddef>
#include <cstdint>

namespace knorm {

// Largest field size q^n that exhaustive operations will walk.
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Largest number of divisors a single divisor enumeration may produce.
inline constexpr std::size_t kDefaultDivisorCap = std::size_t{1} << 20;

// Largest base field F_q supported (arithmetic is table driven).
inline constexpr std::uint32_t kMaxBaseFieldOrder = std::uint32_t{1} << 20;

// Pollard rho iteration budget per factor_integer call.
inline constexpr std::uint64_t kDefaultRhoBudget = 50'000'000;

}  // namespace knorm

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace knorm {

/// The base field F_q = F_p[u]/(h(u)), q = p^e.
///
/// Elements are encoded as integers in [0, q): the element
/// d_0 + d_1 u + ... + d_{e-1} u^{e-1} is stored as sum d_i p^i. For e = 1
/// this is the residue itself. The modulus h is the least monic irreducible
/// of degree e in the order of this encoding (so h = u for e = 1).
///
/// Arithmetic is table driven: full addition and multiplication tables when
/// q <= 256, otherwise Zech-style exp/log tables for multiplication and
/// digit-wise addition. Instances are immutable and shared.
class BaseField {
 public:
  using Elem = std::uint32_t;

  static std::shared_ptr<const BaseField> create(std::uint32_t p, unsigned e);

  std::uint32_t p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Monic modulus over F_p, lowest coefficient first, length e + 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// A fixed generator of F_q^*.
  Elem generator() const noexcept { return exp_[1]; }

  Elem add(Elem a, Elem b) const noexcept {
    if (small_) return add_tab_[a * q_ + b];
    if (e_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_digits(a, b, false);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    if (small_) return add_tab_[a * q_ + neg_tab_[b]];
    if (e_ == 1) return a >= b ? a - b : a + p_ - b;
    return add_digits(a, b, true);
  }
  Elem neg(Elem a) const noexcept { return sub(0, a); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (small_) return mul_tab_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Multiplicative inverse; inv(0) is 0.
  Elem inv(Elem a) const noexcept {
    if (a == 0) return 0;
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem pow(Elem a, std::uint64_t k) const noexcept;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  friend bool operator==(const BaseField& a, const BaseField& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

  // Use create().
  BaseField(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus);

 private:
  Elem add_digits(Elem a, Elem b, bool subtract) const noexcept;

  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  bool small_ = false;
  std::vector<std::uint8_t> add_tab_, mul_tab_, neg_tab_;
  std::vector<Elem> exp_;  // length 2(q-1), exp_[i] = g^i
  std::vector<std::uint32_t> log_;
};

using BaseFieldPtr = std::shared_ptr<const BaseField>;

}  // namespace knorm

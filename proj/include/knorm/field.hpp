#pragma once

// The tower F_p < F_q < F_{q^n}: element arithmetic, Frobenius, relative
// traces, multiplicative order and primitivity.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knorm/base_field.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/integer.hpp"

namespace knorm {

/// An element of F_{q^n}: coordinates over F_q in the power basis
/// 1, v, ..., v^{n-1} of the top modulus.
struct FFElement {
  std::vector<BaseField::Elem> coeffs;

  bool is_zero() const noexcept {
    for (auto c : coeffs)
      if (c) return false;
    return true;
  }
  friend bool operator==(const FFElement&, const FFElement&) = default;
};

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

/// F_{q^n} = F_q[v]/(top_modulus). Immutable after construction; the
/// factorizations of q^n - 1 and x^n - 1 are computed on first use,
/// exactly once, and are safe to request from several threads.
class FieldContext {
 public:
  using Elem = BaseField::Elem;

  const BaseField& base() const noexcept { return *base_; }
  const BaseFieldPtr& base_ptr() const noexcept { return base_; }
  std::uint32_t p() const noexcept { return base_->p(); }
  unsigned e() const noexcept { return base_->e(); }
  std::uint32_t q() const noexcept { return base_->q(); }
  unsigned n() const noexcept { return n_; }
  /// q^n.
  const mpz_class& size() const noexcept { return size_; }
  /// q^n when it fits in 64 bits.
  std::optional<std::uint64_t> size_u64() const noexcept { return size_u64_; }

  /// Base modulus over F_p (as stored by the base field).
  const std::vector<std::uint32_t>& base_modulus() const noexcept { return base_->modulus(); }
  const FqPoly& top_modulus() const noexcept { return top_modulus_; }

  const FactoredInt& qn_minus_1() const;
  const FactoredPoly& xn_minus_1() const;

  FFElement zero() const { return FFElement{std::vector<Elem>(n_, 0)}; }
  FFElement one() const;
  /// The class of v, the generator of the power basis.
  FFElement v() const;
  FFElement embed(Elem c) const;
  FFElement from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FFElement& a) const;
  /// Checks coordinate count and range; throws InputError.
  void validate(const FFElement& a) const;

  FFElement add(const FFElement& a, const FFElement& b) const;
  FFElement sub(const FFElement& a, const FFElement& b) const;
  FFElement neg(const FFElement& a) const;
  FFElement scale(Elem c, const FFElement& a) const;
  FFElement mul(const FFElement& a, const FFElement& b) const;
  FFElement square(const FFElement& a) const { return mul(a, a); }
  FFElement pow(const FFElement& a, const mpz_class& k) const;
  /// Throws InputError for a = 0.
  FFElement inv(const FFElement& a) const;

  /// One Frobenius step a -> a^q as a matrix-vector product.
  FFElement frobenius_once(const FFElement& a) const;
  /// a, a^q, ..., a^{q^{count-1}}.
  std::vector<FFElement> conjugates(const FFElement& a, unsigned count) const;

  // Span kernels for hot loops; out must not alias inputs.
  void mul_into(std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
                std::vector<Elem>& scratch) const;
  void frobenius_into(std::span<const Elem> a, std::span<Elem> out) const;
  /// Column j holds the coordinates of v^{jq}.
  const std::vector<Elem>& frobenius_matrix() const noexcept { return frob_; }

  // Use build_field / build_extension.
  FieldContext(BaseFieldPtr base, FqPoly modulus);

 private:
  BaseFieldPtr base_;
  unsigned n_;
  FqPoly top_modulus_;
  mpz_class size_;
  std::optional<std::uint64_t> size_u64_;
  std::vector<Elem> frob_;  // column major n x n

  mutable std::once_flag qn_once_, xn_once_;
  mutable std::optional<FactoredInt> qn_minus_1_;
  mutable std::optional<FactoredPoly> xn_minus_1_;
};

/// F_{p^{e n}} as a tower with lexicographically least moduli. Throws
/// InputError for non-prime p or zero degrees.
FieldPtr build_field(std::uint32_t p, unsigned e, unsigned n);
/// Extension of `base` by a given monic modulus, checked irreducible.
FieldPtr build_extension(const BaseFieldPtr& base, const FqPoly& modulus);

/// a^{q^i}; i is reduced modulo n.
FFElement frobenius(const FieldContext& ctx, const FFElement& a, std::uint64_t i);
/// Relative trace to F_{q^m}: sum of a^{q^{m j}} for j < n/m.
FFElement trace_to_subfield(const FieldContext& ctx, const FFElement& a, unsigned m);
/// True when a^{q^m} = a, i.e. a lies in F_{q^m}.
bool in_subfield(const FieldContext& ctx, const FFElement& a, unsigned m);

/// Least t >= 1 with a^t = 1, found by dividing prime factors out of q^n - 1.
mpz_class multiplicative_order(const FieldContext& ctx, const FFElement& a);
/// a^{(q^n-1)/r} != 1 for every prime r | q^n - 1; false for a = 0.
bool is_primitive(const FieldContext& ctx, const FFElement& a);

/// Comma separated F_q coordinates "c0,c1,...".
std::string to_string(const FFElement& a);
FFElement parse_element(const FieldContext& ctx, std::string_view text);

}  // namespace knorm

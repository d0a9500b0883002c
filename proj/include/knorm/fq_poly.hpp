#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knorm/base_field.hpp"

namespace knorm {

/// Dense univariate polynomial over F_q, lowest degree first.
///
/// Always canonical: no trailing zero coefficients, so the zero polynomial
/// has no coefficients and degree -1. Carries a handle to its base field;
/// mixing polynomials over different fields throws InputError.
class FqPoly {
 public:
  using Elem = BaseField::Elem;

  explicit FqPoly(BaseFieldPtr field);
  FqPoly(BaseFieldPtr field, std::vector<Elem> coeffs);

  static FqPoly constant(BaseFieldPtr field, Elem c);
  static FqPoly monomial(BaseFieldPtr field, std::size_t degree, Elem c = 1);
  static FqPoly x_minus(BaseFieldPtr field, Elem root);
  static FqPoly xn_minus_1(BaseFieldPtr field, std::size_t n);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  Elem leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

  const BaseField& field() const noexcept { return *field_; }
  const BaseFieldPtr& field_ptr() const noexcept { return field_; }

  /// Same polynomial scaled to leading coefficient 1 (zero stays zero).
  FqPoly monic() const;
  Elem eval(Elem x) const;

  FqPoly& operator+=(const FqPoly& rhs);
  FqPoly& operator-=(const FqPoly& rhs);
  FqPoly& operator*=(const FqPoly& rhs);
  FqPoly scaled(Elem c) const;

  friend FqPoly operator+(FqPoly a, const FqPoly& b) { return a += b; }
  friend FqPoly operator-(FqPoly a, const FqPoly& b) { return a -= b; }
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b);

  friend bool operator==(const FqPoly& a, const FqPoly& b) noexcept {
    return a.coeffs_ == b.coeffs_ && *a.field_ == *b.field_;
  }
  /// Degree first, then coefficients from the top down compared as integers.
  friend std::strong_ordering operator<=>(const FqPoly& a, const FqPoly& b) noexcept;

 private:
  void trim() noexcept;
  void check_same_field(const FqPoly& other) const;

  BaseFieldPtr field_;
  std::vector<Elem> coeffs_;
};

/// Quotient and remainder; throws InputError on division by zero.
std::pair<FqPoly, FqPoly> divrem(const FqPoly& a, const FqPoly& b);
/// Quotient of an exact division; throws InternalError when b does not divide a.
FqPoly exact_div(const FqPoly& a, const FqPoly& b);
bool divides(const FqPoly& d, const FqPoly& a);
/// Monic greatest common divisor; gcd(0, 0) = 0.
FqPoly gcd(const FqPoly& a, const FqPoly& b);
FqPoly powmod(FqPoly base, const mpz_class& exponent, const FqPoly& modulus);
FqPoly pow(const FqPoly& base, unsigned exponent);

/// Rabin's test: f of degree d is irreducible iff x^(q^d) = x mod f and
/// gcd(x^(q^(d/r)) - x, f) = 1 for every prime r | d.
bool is_irreducible(const FqPoly& f);

/// Least monic irreducible of the given degree, enumerating candidates by
/// the integer encoding sum c_i q^i of the lower coefficients.
FqPoly least_irreducible(const BaseFieldPtr& field, unsigned degree);

/// `c0 + c1*x + ... + ck*x^k`, zero terms omitted, unit coefficients of
/// positive powers omitted; "0" for the zero polynomial.
std::string to_string(const FqPoly& f);
/// `[c0,c1,...,ck]`.
std::string to_list_string(const FqPoly& f);
/// Parses either text form. Coefficients are base field encodings and must
/// be below q.
FqPoly parse_poly(const BaseFieldPtr& field, std::string_view text);

/// A monic polynomial as a product of distinct monic irreducibles with
/// multiplicities, sorted by the FqPoly order.
class FactoredPoly {
 public:
  struct Factor {
    FqPoly poly;
    unsigned multiplicity;
  };

  explicit FactoredPoly(BaseFieldPtr field) : field_(std::move(field)) {}
  /// Sorts the factors; throws InputError on duplicates or zero multiplicity.
  FactoredPoly(BaseFieldPtr field, std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  const BaseFieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t distinct() const noexcept { return factors_.size(); }
  unsigned degree() const;
  FqPoly expand() const;

  /// Multiplicity vector of a monic divisor `d`; InputError if d does not
  /// divide the product.
  std::vector<unsigned> exponents_of(const FqPoly& d) const;
  FqPoly from_exponents(const std::vector<unsigned>& exps) const;
  FactoredPoly sub_factorization(const std::vector<unsigned>& exps) const;

 private:
  BaseFieldPtr field_;
  std::vector<Factor> factors_;
};

}  // namespace knorm

#include "knorm/base_field.hpp"

#include "knorm/error.hpp"
#include "knorm/integer.hpp"
#include "knorm/limits.hpp"

namespace knorm {

namespace {

using Digits = std::vector<std::uint32_t>;

// Polynomial helpers over F_p on digit vectors (lowest first, untrimmed).
Digits mulmod_digits(const Digits& a, const Digits& b, const Digits& mod, std::uint32_t p) {
  const std::size_t e = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t i = 2 * e - 1; i >= e && i > 0; --i) {
    const std::uint64_t c = prod[i];
    if (!c) continue;
    for (std::size_t j = 0; j < e; ++j) prod[i - e + j] = (prod[i - e + j] + (p - c) * mod[j]) % p;
    prod[i] = 0;
  }
  return Digits(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(e));
}

// Remainder of a modulo monic m over F_p; both given as coefficient lists.
Digits rem_digits(Digits a, const Digits& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * m[j]) % p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// Trial division by every monic polynomial of degree <= deg/2.
bool irreducible_over_prime(const Digits& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
      g[d] = 1;
      if (rem_digits(f, g, p).empty()) return false;
    }
  }
  return true;
}

Digits least_irreducible_over_prime(std::uint32_t p, unsigned e) {
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits f(e + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i, c /= p) f[i] = static_cast<std::uint32_t>(c % p);
    f[e] = 1;
    if (f[0] == 0) continue;
    if (irreducible_over_prime(f, p)) return f;
  }
  detail::internal_failure("no irreducible polynomial found");
}

}  // namespace

std::shared_ptr<const BaseField> BaseField::create(std::uint32_t p, unsigned e) {
  detail::check_input(e >= 1, "base field degree e must be >= 1");
  detail::check_input(is_probable_prime(mpz_class(p)), "characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    detail::check_input(q <= kMaxBaseFieldOrder, "base field order exceeds supported maximum 2^20");
  }
  return std::make_shared<const BaseField>(p, e, least_irreducible_over_prime(p, e));
}

BaseField::BaseField(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < e; ++i) q_ *= p;

  auto to_digits = [&](Elem a) {
    Digits d(e_, 0);
    for (unsigned i = 0; i < e_; ++i, a /= p_) d[i] = a % p_;
    return d;
  };
  auto from = [&](const Digits& d) {
    Elem v = 0;
    for (unsigned i = e_; i-- > 0;) v = v * p_ + d[i];
    return v;
  };
  auto slow_mul = [&](Elem a, Elem b) { return from(mulmod_digits(to_digits(a), to_digits(b), modulus_, p_)); };

  // Generator of F_q^*: least encoding whose order is q - 1.
  const std::uint64_t group = q_ - 1;
  const auto primes = factor_small(group);
  auto slow_pow = [&](Elem a, std::uint64_t k) {
    Elem r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };
  Elem g = 1;
  for (Elem cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (auto [r, mult] : primes) {
      if (slow_pow(cand, group / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }

  exp_.assign(2 * group, 0);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = exp_[i + group] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, g);
  }
  if (cur != 1) detail::internal_failure("base field generator has wrong order");

  if (q_ <= 256) {
    small_ = true;
    add_tab_.assign(std::size_t{q_} * q_, 0);
    mul_tab_.assign(std::size_t{q_} * q_, 0);
    neg_tab_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        add_tab_[a * q_ + b] = static_cast<std::uint8_t>(add_digits(a, b, false));
        mul_tab_[a * q_ + b] = static_cast<std::uint8_t>((a && b) ? exp_[log_[a] + log_[b]] : 0);
      }
      neg_tab_[a] = static_cast<std::uint8_t>(add_digits(0, a, true));
    }
  }
}

BaseField::Elem BaseField::add_digits(Elem a, Elem b, bool subtract) const noexcept {
  Elem out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    const Elem x = a % p_, y = b % p_;
    a /= p_;
    b /= p_;
    const Elem d = subtract ? (x + p_ - y) % p_ : (x + y) % p_;
    out += d * scale;
    scale *= p_;
  }
  return out;
}

BaseField::Elem BaseField::pow(Elem a, std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1)];
}

std::vector<std::uint32_t> BaseField::digits(Elem a) const {
  std::vector<std::uint32_t> d(e_, 0);
  for (unsigned i = 0; i < e_; ++i, a /= p_) d[i] = a % p_;
  return d;
}

BaseField::Elem BaseField::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() != e_) throw InputError("digit vector has wrong length");
  Elem v = 0;
  for (unsigned i = e_; i-- > 0;) {
    if (d[i] >= p_) throw InputError("digit out of range");
    v = v * p_ + d[i];
  }
  return v;
}

}  // namespace knorm

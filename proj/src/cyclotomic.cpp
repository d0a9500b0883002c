#include "knorm/cyclotomic.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>

#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/integer.hpp"

namespace knorm {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

struct Split {
  std::uint64_t m;     // part coprime to p
  std::uint64_t pt;    // p^t
};

Split split_char(std::uint64_t n, std::uint64_t p) {
  Split s{n, 1};
  while (s.m % p == 0) {
    s.m /= p;
    s.pt *= p;
  }
  return s;
}

// A primitive d-th root of unity in `aux` (whose multiplicative group order
// is divisible by d): the least-index element whose ((Q-1)/d)-th power has
// exact order d.
FFElement primitive_root_of_unity(const FieldContext& aux, std::uint64_t d) {
  const FFElement one = aux.one();
  if (d == 1) return one;
  const mpz_class group = aux.size() - 1;
  if (!mpz_divisible_ui_p(group.get_mpz_t(), d)) detail::internal_failure("root of unity order does not divide group order");
  const mpz_class cofactor = group / d;
  const auto primes = factor_small(d);
  for (std::uint64_t idx = 2;; ++idx) {
    const FFElement gamma = aux.pow(aux.from_index(idx), cofactor);
    bool exact = true;
    for (auto [r, e] : primes) {
      if (aux.pow(gamma, mpz_class(std::to_string(d / r))) == one) {
        exact = false;
        break;
      }
    }
    if (exact) return gamma;
    if (idx > 1'000'000) detail::internal_failure("no primitive root of unity found");
  }
}

}  // namespace

std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t m) {
  detail::check_input(m >= 1, "coset modulus must be >= 1");
  detail::check_input(std::gcd(q, m) == 1, "cyclotomic cosets need gcd(q, m) = 1");
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<bool> seen(m, false);
  const std::uint64_t qm = q % m;
  for (std::uint64_t j = 0; j < m; ++j) {
    if (seen[j]) continue;
    std::vector<std::uint64_t> coset;
    std::uint64_t c = j;
    do {
      seen[c] = true;
      coset.push_back(c);
      c = mulmod64(c, qm, m);
    } while (c != j);
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

std::vector<FactorShape> xn_minus_1_shape(std::uint64_t q, std::uint64_t n) {
  detail::check_input(n >= 1, "n must be >= 1");
  const auto pe = prime_power_decompose(q);
  detail::check_input(pe.has_value(), std::to_string(q) + " is not a prime power");
  const Split s = split_char(n, pe->first);
  std::vector<FactorShape> shape;
  for (const auto& c : cyclotomic_cosets(q, s.m))
    shape.push_back({static_cast<unsigned>(c.size()), static_cast<unsigned>(s.pt)});
  std::stable_sort(shape.begin(), shape.end(), [](const FactorShape& a, const FactorShape& b) { return a.degree < b.degree; });
  return shape;
}

FactoredPoly factor_xn_minus_1(const BaseFieldPtr& field, unsigned n) {
  detail::check_input(n >= 1, "n must be >= 1");
  const std::uint64_t q = field->q();
  const Split s = split_char(n, field->p());

  std::map<std::size_t, FieldPtr> aux_fields;
  std::map<std::uint64_t, FFElement> roots;
  std::vector<FactoredPoly::Factor> factors;

  for (const auto& coset : cyclotomic_cosets(q, s.m)) {
    const std::uint64_t j = coset.front();
    const std::uint64_t g = std::gcd(j, s.m);  // gcd(0, m) = m, so d = 1 for the root 1
    const std::uint64_t d = s.m / g;
    const std::size_t L = coset.size();

    auto& aux = aux_fields[L];
    if (!aux) aux = build_extension(field, least_irreducible(field, static_cast<unsigned>(L)));
    auto it = roots.find(d);
    if (it == roots.end()) it = roots.emplace(d, primitive_root_of_unity(*aux, d)).first;
    const FFElement& eta = it->second;

    // prod (x - eta^{c/g}) with coefficients in the auxiliary field.
    std::vector<FFElement> poly{aux->one()};
    for (std::uint64_t c : coset) {
      const FFElement root = aux->pow(eta, mpz_class(std::to_string(c / g)));
      std::vector<FFElement> next(poly.size() + 1, aux->zero());
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] = aux->add(next[i + 1], poly[i]);
        next[i] = aux->sub(next[i], aux->mul(root, poly[i]));
      }
      poly = std::move(next);
    }
    std::vector<FqPoly::Elem> coeffs;
    for (const auto& c : poly) {
      for (std::size_t i = 1; i < c.coeffs.size(); ++i)
        if (c.coeffs[i]) detail::internal_failure("cyclotomic factor has a coefficient outside F_q");
      coeffs.push_back(c.coeffs[0]);
    }
    factors.push_back({FqPoly(field, std::move(coeffs)), static_cast<unsigned>(s.pt)});
  }
  return FactoredPoly(field, std::move(factors));
}

FactoredPoly factor_xn_minus_1(const FieldContext& ctx) { return ctx.xn_minus_1(); }

mpz_class euler_phi_poly(const FactoredPoly& f) {
  const mpz_class q = f.field_ptr()->q();
  mpz_class phi = 1;
  for (const auto& fac : f.factors()) {
    const unsigned d = static_cast<unsigned>(fac.poly.degree());
    phi *= pow_ui(q, d * fac.multiplicity) - pow_ui(q, d * (fac.multiplicity - 1));
  }
  return phi;
}

int mobius_poly(const FactoredPoly& f) {
  for (const auto& fac : f.factors())
    if (fac.multiplicity > 1) return 0;
  return f.factors().size() % 2 ? -1 : 1;
}

mpz_class count_squarefree_divisors_poly(const FactoredPoly& f) {
  mpz_class w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, f.factors().size());
  return w;
}

std::vector<std::vector<unsigned>> divisor_exponents_of_degree(const FactoredPoly& f, unsigned k, std::size_t cap) {
  const auto& fac = f.factors();
  detail::check_input(k <= f.degree(), "divisor degree " + std::to_string(k) + " exceeds " + std::to_string(f.degree()));
  // reach[i][d]: degree d is a sum over factors i.. with bounded exponents.
  std::vector<std::vector<char>> reach(fac.size() + 1, std::vector<char>(k + 1, 0));
  reach[fac.size()][0] = 1;
  for (std::size_t i = fac.size(); i-- > 0;) {
    const unsigned deg = static_cast<unsigned>(fac[i].poly.degree());
    for (unsigned d = 0; d <= k; ++d)
      for (unsigned e = 0; e <= fac[i].multiplicity && e * deg <= d; ++e)
        if (reach[i + 1][d - e * deg]) {
          reach[i][d] = 1;
          break;
        }
  }

  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(fac.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i == fac.size()) {
      if (remaining == 0) {
        if (out.size() >= cap) throw BudgetExceeded("too many divisors (cap " + std::to_string(cap) + ")");
        out.push_back(cur);
      }
      return;
    }
    if (!reach[i][remaining]) return;
    const unsigned deg = static_cast<unsigned>(fac[i].poly.degree());
    for (unsigned e = 0; e <= fac[i].multiplicity && e * deg <= remaining; ++e) {
      cur[i] = e;
      self(self, i + 1, remaining - e * deg);
    }
    cur[i] = 0;
  };
  rec(rec, 0, k);
  return out;
}

std::vector<FqPoly> divisors_of_degree(const FactoredPoly& f, unsigned k, std::size_t cap) {
  std::vector<FqPoly> out;
  for (const auto& e : divisor_exponents_of_degree(f, k, cap)) out.push_back(f.from_exponents(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<unsigned>> all_divisor_exponents(const FactoredPoly& f, std::size_t cap) {
  std::size_t total = 1;
  for (const auto& fac : f.factors()) {
    if (total > cap / (fac.multiplicity + 1)) throw BudgetExceeded("too many divisors (cap " + std::to_string(cap) + ")");
    total *= fac.multiplicity + 1;
  }
  std::vector<std::vector<unsigned>> out;
  out.reserve(total);
  std::vector<unsigned> cur(f.factors().size(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = cur.size();
    while (i-- > 0) {
      if (cur[i] < f.factors()[i].multiplicity) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<bool> degree_coverage(const std::vector<FactorShape>& shape) {
  std::size_t total = 0;
  for (const auto& s : shape) total += std::size_t{s.degree} * s.multiplicity;
  boost::dynamic_bitset<> reach(total + 1);
  reach.set(0);
  for (const auto& s : shape) {
    // Bounded multiplicity via binary splitting: chunks 1, 2, 4, ..., rest.
    unsigned left = s.multiplicity;
    for (unsigned chunk = 1; left > 0; chunk *= 2) {
      const unsigned take = std::min(chunk, left);
      reach |= reach << (std::size_t{take} * s.degree);
      left -= take;
    }
  }
  std::vector<bool> out(total + 1);
  for (std::size_t i = 0; i <= total; ++i) out[i] = reach.test(i);
  return out;
}

std::vector<FactorShape> shape_of(const FactoredPoly& f) {
  std::vector<FactorShape> shape;
  for (const auto& fac : f.factors()) shape.push_back({static_cast<unsigned>(fac.poly.degree()), fac.multiplicity});
  return shape;
}

std::vector<unsigned> degree_set(const FactoredPoly& f) {
  const auto cov = degree_coverage(shape_of(f));
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < cov.size(); ++i)
    if (cov[i]) out.push_back(static_cast<unsigned>(i));
  return out;
}

}  // namespace knorm

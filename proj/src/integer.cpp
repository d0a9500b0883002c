#include "knorm/integer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "knorm/error.hpp"

namespace knorm {

namespace {

constexpr unsigned kTrialBound = 1u << 14;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const mpz_class& n, const mpz_class& n_minus_1, const mpz_class& d,
                        unsigned s, const mpz_class& base) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's cycle finding with batched gcds. Returns a nontrivial factor of
// the odd composite n, or 0 when the iteration budget runs out.
mpz_class brent_rho(const mpz_class& n, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1, diff;
    std::uint64_t r = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        if (budget < lim) return 0;
        budget -= lim;
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        if (budget == 0) return 0;
        --budget;
        step(ys);
        diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    // Degenerate cycle for this constant; retry with the next one.
  }
}

void split_composite(const mpz_class& n, std::uint64_t& budget, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  // Perfect powers defeat rho on some constants; peel them off directly.
  for (unsigned long k = 2; mpz_sizeinbase(n.get_mpz_t(), 2) / k >= 1; ++k) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<mpz_class, unsigned> sub;
      split_composite(root, budget, sub);
      for (auto& [p, e] : sub) out[p] += e * static_cast<unsigned>(k);
      return;
    }
    if (k > 64) break;
  }
  mpz_class d = brent_rho(n, budget);
  if (d == 0) throw BudgetExceeded("factorization incomplete: rho budget exhausted on " + n.get_str());
  split_composite(d, budget, out);
  split_composite(n / d, budget, out);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::mutex g_default_cache_mu;
std::shared_ptr<FactorCache> g_default_cache;

}  // namespace

mpz_class pow_ui(const mpz_class& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  const mpz_class n_minus_1 = n - 1;
  mpz_class d = n_minus_1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    for (unsigned b : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
      if (!miller_rabin_round(n, n_minus_1, d, s, mpz_class(b))) return false;
    }
    return true;
  }
  std::mt19937_64 rng(0x6b6e6f726d616cULL);
  const mpz_class span = n - 3;
  for (int round = 0; round < 64; ++round) {
    mpz_class base = 0;
    for (int w = 0; w < 4; ++w) {
      base <<= 64;
      base += mpz_class(std::to_string(rng()));
    }
    base = base % span + 2;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

FactoredInt FactoredInt::from_factors(std::vector<PrimePower> factors) {
  FactoredInt out;
  mpz_class value = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.exponent == 0) throw InputError("factor with zero exponent");
    if (i > 0 && !(factors[i - 1].prime < f.prime)) throw InputError("factors not strictly increasing");
    if (!is_probable_prime(f.prime)) throw InputError("factor " + f.prime.get_str() + " is not prime");
    value *= pow_ui(f.prime, f.exponent);
  }
  out.value_ = value;
  out.factors_ = std::move(factors);
  return out;
}

mpz_class FactoredInt::product() const {
  mpz_class v = 1;
  for (const auto& f : factors_) v *= pow_ui(f.prime, f.exponent);
  return v;
}

std::string FactoredInt::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += " * ";
    s += f.prime.get_str();
    if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

// ---------------------------------------------------------------------------

FactorCache::FactorCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string reason;
    auto f = parse_line(t, &reason);
    if (!f) {
      warnings_.push_back(path_.string() + ":" + std::to_string(lineno) + ": rejected: " + reason);
      std::cerr << "warning: factor cache " << warnings_.back() << '\n';
      continue;
    }
    entries_.emplace(f->value(), *f);
  }
}

std::optional<FactoredInt> FactorCache::parse_line(std::string_view line, std::string* reason) {
  auto fail = [&](std::string why) -> std::optional<FactoredInt> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return fail("missing '='");
  const std::string lhs = trim(line.substr(0, eq));
  const std::string rhs = trim(line.substr(eq + 1));
  if (!all_digits(lhs)) return fail("value is not a decimal integer");
  const mpz_class value(lhs);
  std::vector<PrimePower> factors;
  if (rhs != "1") {
    std::size_t pos = 0;
    while (pos <= rhs.size()) {
      auto star = rhs.find('*', pos);
      if (star == std::string::npos) star = rhs.size();
      const std::string term = trim(std::string_view(rhs).substr(pos, star - pos));
      const auto caret = term.find('^');
      const std::string base = trim(term.substr(0, caret));
      const std::string expo = caret == std::string::npos ? "1" : trim(term.substr(caret + 1));
      if (!all_digits(base) || !all_digits(expo) || expo.size() > 9) return fail("malformed term '" + term + "'");
      const unsigned e = static_cast<unsigned>(std::stoul(expo));
      factors.push_back({mpz_class(base), e});
      pos = star + 1;
    }
  }
  std::sort(factors.begin(), factors.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredInt f;
  try {
    f = FactoredInt::from_factors(std::move(factors));
  } catch (const InputError& e) {
    return fail(e.what());
  }
  if (f.value() != value) return fail("product does not equal value");
  return f;
}

std::string FactorCache::format_line(const FactoredInt& f) {
  std::string s = f.value().get_str() + " =";
  if (f.factors().empty()) return s + " 1";
  bool first = true;
  for (const auto& pp : f.factors()) {
    s += first ? " " : " * ";
    first = false;
    s += pp.prime.get_str() + "^" + std::to_string(pp.exponent);
  }
  return s;
}

std::optional<FactoredInt> FactorCache::lookup(const mpz_class& value) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(value);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactorCache::store(const FactoredInt& f) {
  std::lock_guard lock(mu_);
  if (!entries_.emplace(f.value(), f).second) return;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << format_line(f) << '\n';
}

std::size_t FactorCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::vector<std::string> FactorCache::warnings() const {
  std::lock_guard lock(mu_);
  return warnings_;
}

std::shared_ptr<FactorCache> default_factor_cache() {
  std::lock_guard lock(g_default_cache_mu);
  return g_default_cache;
}

void set_default_factor_cache(std::shared_ptr<FactorCache> cache) {
  std::lock_guard lock(g_default_cache_mu);
  g_default_cache = std::move(cache);
}

// ---------------------------------------------------------------------------

FactoredInt factor_integer(const mpz_class& m, const FactorOptions& options) {
  if (m < 1) throw InputError("factor_integer: argument must be >= 1");
  std::shared_ptr<FactorCache> cache = options.cache;
  if (!cache && options.use_default_cache) cache = default_factor_cache();
  if (cache) {
    if (auto hit = cache->lookup(m)) return *hit;
  }

  std::map<mpz_class, unsigned> found;
  mpz_class rest = m;
  for (unsigned p : small_primes()) {
    if (rest == 1) break;
    if (mpz_class(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[mpz_class(p)];
    }
  }
  std::uint64_t budget = options.rho_budget;
  split_composite(rest, budget, found);

  std::vector<PrimePower> factors;
  for (auto& [p, e] : found) factors.push_back({p, e});
  FactoredInt result = FactoredInt::from_factors(std::move(factors));
  if (result.value() != m) detail::internal_failure("factor_integer: product mismatch for " + m.get_str());
  // Only nontrivial work is worth persisting.
  if (cache && mpz_sizeinbase(m.get_mpz_t(), 2) > 40) cache->store(result);
  return result;
}

mpz_class euler_phi(const FactoredInt& m) {
  mpz_class phi = 1;
  for (const auto& f : m.factors()) phi *= (f.prime - 1) * pow_ui(f.prime, f.exponent - 1);
  return phi;
}

mpz_class divisor_count(const FactoredInt& m) {
  mpz_class d = 1;
  for (const auto& f : m.factors()) d *= f.exponent + 1;
  return d;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::uint64_t euler_phi_small(std::uint64_t m) {
  std::uint64_t phi = m;
  for (auto [p, e] : factor_small(m)) phi = phi / p * (p - 1);
  return phi;
}

std::vector<std::uint64_t> divisors_small(std::uint64_t m) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factor_small(m)) {
    const std::size_t n = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = factor_small(q);
  if (f.size() != 1 || f[0].first > 0xffffffffULL) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(f[0].first), f[0].second);
}

}  // namespace knorm

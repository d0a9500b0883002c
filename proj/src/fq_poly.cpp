#include "knorm/fq_poly.hpp"

#include <algorithm>
#include <cctype>

#include "knorm/error.hpp"
#include "knorm/integer.hpp"

namespace knorm {

FqPoly::FqPoly(BaseFieldPtr field) : field_(std::move(field)) {}

FqPoly::FqPoly(BaseFieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (Elem c : coeffs_) detail::check_input(c < field_->q(), "coefficient " + std::to_string(c) + " not below q");
  trim();
}

FqPoly FqPoly::constant(BaseFieldPtr field, Elem c) { return FqPoly(std::move(field), {c}); }

FqPoly FqPoly::monomial(BaseFieldPtr field, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return FqPoly(std::move(field), std::move(v));
}

FqPoly FqPoly::x_minus(BaseFieldPtr field, Elem root) {
  const Elem c = field->neg(root);
  return FqPoly(std::move(field), {c, 1});
}

FqPoly FqPoly::xn_minus_1(BaseFieldPtr field, std::size_t n) {
  std::vector<Elem> v(n + 1, 0);
  v[n] = 1;
  v[0] = field->add(v[0], field->neg(1));
  return FqPoly(std::move(field), std::move(v));
}

void FqPoly::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void FqPoly::check_same_field(const FqPoly& other) const {
  if (field_ != other.field_ && !(*field_ == *other.field_)) throw InputError("polynomials over mismatched ambient fields");
}

FqPoly FqPoly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(field_->inv(leading()));
}

FqPoly::Elem FqPoly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

FqPoly& FqPoly::operator+=(const FqPoly& rhs) {
  check_same_field(rhs);
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] = field_->add(coeffs_[i], rhs.coeffs_[i]);
  trim();
  return *this;
}

FqPoly& FqPoly::operator-=(const FqPoly& rhs) {
  check_same_field(rhs);
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] = field_->sub(coeffs_[i], rhs.coeffs_[i]);
  trim();
  return *this;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
  a.check_same_field(b);
  if (a.is_zero() || b.is_zero()) return FqPoly(a.field_);
  const BaseField& F = *a.field_;
  std::vector<FqPoly::Elem> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const auto ai = a.coeffs_[i];
    if (!ai) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(ai, b.coeffs_[j]));
  }
  FqPoly r(a.field_);
  r.coeffs_ = std::move(out);
  r.trim();
  return r;
}

FqPoly& FqPoly::operator*=(const FqPoly& rhs) { return *this = *this * rhs; }

FqPoly FqPoly::scaled(Elem c) const {
  FqPoly r(field_);
  r.coeffs_.reserve(coeffs_.size());
  for (Elem x : coeffs_) r.coeffs_.push_back(field_->mul(x, c));
  r.trim();
  return r;
}

std::strong_ordering operator<=>(const FqPoly& a, const FqPoly& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::pair<FqPoly, FqPoly> divrem(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  if (!(*a.field_ptr() == *b.field_ptr())) throw InputError("polynomials over mismatched ambient fields");
  const BaseField& F = a.field();
  if (a.degree() < b.degree()) return {FqPoly(a.field_ptr()), a};
  std::vector<FqPoly::Elem> r = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const auto inv_lead = F.inv(d.back());
  std::vector<FqPoly::Elem> quot(r.size() - db, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    const auto c = F.mul(r[i], inv_lead);
    if (!c) continue;
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, d[j]));
  }
  r.resize(db);
  return {FqPoly(a.field_ptr(), std::move(quot)), FqPoly(a.field_ptr(), std::move(r))};
}

FqPoly exact_div(const FqPoly& a, const FqPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) detail::internal_failure("exact_div: nonzero remainder dividing " + to_string(a) + " by " + to_string(b));
  return q;
}

bool divides(const FqPoly& d, const FqPoly& a) {
  if (d.is_zero()) return a.is_zero();
  return divrem(a, d).second.is_zero();
}

FqPoly gcd(const FqPoly& a, const FqPoly& b) {
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    FqPoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FqPoly powmod(FqPoly base, const mpz_class& exponent, const FqPoly& modulus) {
  if (exponent < 0) throw InputError("negative exponent");
  FqPoly result = divrem(FqPoly::constant(base.field_ptr(), 1), modulus).second;
  base = divrem(base, modulus).second;
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divrem(result * result, modulus).second;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = divrem(result * base, modulus).second;
  }
  return result;
}

FqPoly pow(const FqPoly& base, unsigned exponent) {
  FqPoly r = FqPoly::constant(base.field_ptr(), 1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

bool is_irreducible(const FqPoly& f) {
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  const auto& F = f.field_ptr();
  const FqPoly x = FqPoly::monomial(F, 1);
  const mpz_class q = F->q();
  std::vector<unsigned> checkpoints;
  for (auto [r, e] : factor_small(static_cast<std::uint64_t>(d))) checkpoints.push_back(static_cast<unsigned>(d / r));
  FqPoly h = divrem(x, f).second;
  for (int i = 1; i <= d; ++i) {
    h = powmod(h, q, f);
    if (std::find(checkpoints.begin(), checkpoints.end(), static_cast<unsigned>(i)) != checkpoints.end()) {
      if (gcd(h - x, f).degree() != 0) return false;
    }
  }
  return divrem(h - x, f).second.is_zero();
}

FqPoly least_irreducible(const BaseFieldPtr& field, unsigned degree) {
  detail::check_input(degree >= 1, "irreducible degree must be >= 1");
  const auto q = field->q();
  std::vector<FqPoly::Elem> c(degree + 1, 0);
  c[degree] = 1;
  while (true) {
    if (degree == 1 || c[0] != 0) {
      FqPoly f(field, c);
      if (is_irreducible(f)) return f;
    }
    std::size_t i = 0;
    while (i < degree && ++c[i] == q) c[i++] = 0;
    if (i == degree) detail::internal_failure("no irreducible polynomial of degree " + std::to_string(degree));
  }
}

std::string to_string(const FqPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const auto c = f.coeffs()[i];
    if (!c) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "x";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string to_list_string(const FqPoly& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.coeffs()[i]);
  }
  if (f.is_zero()) s += "0";
  return s + "]";
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

std::uint64_t parse_number(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    throw InputError(std::string("malformed ") + what + " '" + s + "'");
  return std::stoull(s);
}

}  // namespace

FqPoly parse_poly(const BaseFieldPtr& field, std::string_view text) {
  const std::string s = strip(text);
  detail::check_input(!s.empty(), "empty polynomial");
  std::vector<FqPoly::Elem> coeffs;
  auto add_term = [&](std::uint64_t c, std::uint64_t e) {
    if (c >= field->q()) throw InputError("coefficient " + std::to_string(c) + " not below q = " + std::to_string(field->q()));
    if (e > (std::uint64_t{1} << 26)) throw InputError("polynomial degree too large");
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] = field->add(coeffs[e], static_cast<FqPoly::Elem>(c));
  };
  if (s.front() == '[') {
    detail::check_input(s.back() == ']', "unterminated coefficient list");
    const std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0, e = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      add_term(parse_number(body.substr(pos, comma - pos), "coefficient"), e++);
      pos = comma + 1;
    }
    return FqPoly(field, std::move(coeffs));
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto plus = s.find('+', pos);
    if (plus == std::string::npos) plus = s.size();
    const std::string term = s.substr(pos, plus - pos);
    detail::check_input(!term.empty(), "empty term in polynomial '" + std::string(text) + "'");
    const auto xpos = term.find('x');
    if (xpos == std::string::npos) {
      add_term(parse_number(term, "coefficient"), 0);
    } else {
      std::uint64_t c = 1;
      if (xpos > 0) {
        detail::check_input(term[xpos - 1] == '*', "expected '*' before x in term '" + term + "'");
        c = parse_number(term.substr(0, xpos - 1), "coefficient");
      }
      std::uint64_t e = 1;
      const std::string tail = term.substr(xpos + 1);
      if (!tail.empty()) {
        detail::check_input(tail[0] == '^', "unexpected text after x in term '" + term + "'");
        e = parse_number(tail.substr(1), "exponent");
      }
      add_term(c, e);
    }
    pos = plus + 1;
  }
  return FqPoly(field, std::move(coeffs));
}

// ---------------------------------------------------------------------------

FactoredPoly::FactoredPoly(BaseFieldPtr field, std::vector<Factor> factors)
    : field_(std::move(field)), factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    detail::check_input(factors_[i].multiplicity > 0, "factor with zero multiplicity");
    detail::check_input(factors_[i].poly.is_monic() && factors_[i].poly.degree() >= 1, "factors must be monic and nonconstant");
    if (i > 0) detail::check_input(!(factors_[i - 1].poly == factors_[i].poly), "duplicate factor");
  }
}

unsigned FactoredPoly::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += static_cast<unsigned>(f.poly.degree()) * f.multiplicity;
  return d;
}

FqPoly FactoredPoly::expand() const {
  FqPoly r = FqPoly::constant(field_, 1);
  for (const auto& f : factors_)
    for (unsigned i = 0; i < f.multiplicity; ++i) r *= f.poly;
  return r;
}

std::vector<unsigned> FactoredPoly::exponents_of(const FqPoly& d) const {
  detail::check_input(d.is_monic(), "divisor must be monic");
  std::vector<unsigned> exps(factors_.size(), 0);
  FqPoly rest = d;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    while (exps[i] < factors_[i].multiplicity) {
      auto [q, r] = divrem(rest, factors_[i].poly);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++exps[i];
    }
  }
  detail::check_input(rest.is_one(), to_string(d) + " does not divide " + to_string(expand()));
  return exps;
}

FqPoly FactoredPoly::from_exponents(const std::vector<unsigned>& exps) const {
  detail::check_input(exps.size() == factors_.size(), "exponent vector has wrong length");
  FqPoly r = FqPoly::constant(field_, 1);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    detail::check_input(exps[i] <= factors_[i].multiplicity, "exponent exceeds multiplicity");
    for (unsigned k = 0; k < exps[i]; ++k) r *= factors_[i].poly;
  }
  return r;
}

FactoredPoly FactoredPoly::sub_factorization(const std::vector<unsigned>& exps) const {
  detail::check_input(exps.size() == factors_.size(), "exponent vector has wrong length");
  std::vector<Factor> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    detail::check_input(exps[i] <= factors_[i].multiplicity, "exponent exceeds multiplicity");
    if (exps[i]) out.push_back({factors_[i].poly, exps[i]});
  }
  return FactoredPoly(field_, std::move(out));
}

}  // namespace knorm

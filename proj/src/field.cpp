#include "knorm/field.hpp"

#include <algorithm>
#include <cctype>

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"

namespace knorm {

FieldContext::FieldContext(BaseFieldPtr base, FqPoly modulus)
    : base_(std::move(base)), n_(static_cast<unsigned>(modulus.degree())), top_modulus_(std::move(modulus)) {
  size_ = pow_ui(mpz_class(base_->q()), n_);
  if (mpz_sizeinbase(size_.get_mpz_t(), 2) <= 63) size_u64_ = size_.get_ui();

  // Frobenius columns: (v^q)^j for j < n.
  FFElement vq = pow(v(), mpz_class(base_->q()));
  frob_.assign(std::size_t{n_} * n_, 0);
  FFElement col = one();
  for (unsigned j = 0; j < n_; ++j) {
    std::copy(col.coeffs.begin(), col.coeffs.end(), frob_.begin() + static_cast<std::ptrdiff_t>(j) * n_);
    col = mul(col, vq);
  }
}

FieldPtr build_field(std::uint32_t p, unsigned e, unsigned n) {
  detail::check_input(n >= 1, "extension degree n must be >= 1");
  detail::check_input(e >= 1, "base degree e must be >= 1");
  auto base = BaseField::create(p, e);
  FqPoly modulus = least_irreducible(base, n);
  return std::make_shared<const FieldContext>(base, std::move(modulus));
}

FieldPtr build_extension(const BaseFieldPtr& base, const FqPoly& modulus) {
  detail::check_input(*modulus.field_ptr() == *base, "modulus is over a different base field");
  detail::check_input(modulus.is_monic() && modulus.degree() >= 1, "modulus must be monic of positive degree");
  detail::check_input(is_irreducible(modulus), "modulus " + to_string(modulus) + " is not irreducible");
  return std::make_shared<const FieldContext>(base, modulus);
}

const FactoredInt& FieldContext::qn_minus_1() const {
  std::call_once(qn_once_, [this] { qn_minus_1_ = factor_integer(size_ - 1); });
  return *qn_minus_1_;
}

const FactoredPoly& FieldContext::xn_minus_1() const {
  std::call_once(xn_once_, [this] { xn_minus_1_ = factor_xn_minus_1(base_, n_); });
  return *xn_minus_1_;
}

FFElement FieldContext::one() const { return embed(1); }

FFElement FieldContext::v() const {
  FFElement a = zero();
  if (n_ > 1) {
    a.coeffs[1] = 1;
  } else {
    // v is the root of the linear modulus x + c, i.e. -c.
    a.coeffs[0] = base_->neg(top_modulus_.coeff(0));
  }
  return a;
}

FFElement FieldContext::embed(Elem c) const {
  FFElement a = zero();
  a.coeffs[0] = c;
  return a;
}

FFElement FieldContext::from_index(std::uint64_t index) const {
  FFElement a = zero();
  for (unsigned i = 0; i < n_; ++i) {
    a.coeffs[i] = static_cast<Elem>(index % q());
    index /= q();
  }
  if (index != 0) throw InputError("element index out of range");
  return a;
}

std::uint64_t FieldContext::index_of(const FFElement& a) const {
  if (!size_u64_) throw InputError("field too large for integer indices");
  std::uint64_t idx = 0;
  for (unsigned i = n_; i-- > 0;) idx = idx * q() + a.coeffs[i];
  return idx;
}

void FieldContext::validate(const FFElement& a) const {
  detail::check_input(a.coeffs.size() == n_, "element has " + std::to_string(a.coeffs.size()) + " coordinates, expected " + std::to_string(n_));
  for (auto c : a.coeffs) detail::check_input(c < q(), "coordinate " + std::to_string(c) + " not below q");
}

FFElement FieldContext::add(const FFElement& a, const FFElement& b) const {
  FFElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = base_->add(a.coeffs[i], b.coeffs[i]);
  return r;
}

FFElement FieldContext::sub(const FFElement& a, const FFElement& b) const {
  FFElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = base_->sub(a.coeffs[i], b.coeffs[i]);
  return r;
}

FFElement FieldContext::neg(const FFElement& a) const { return sub(zero(), a); }

FFElement FieldContext::scale(Elem c, const FFElement& a) const {
  FFElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = base_->mul(c, a.coeffs[i]);
  return r;
}

void FieldContext::mul_into(std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
                            std::vector<Elem>& scratch) const {
  const BaseField& F = *base_;
  scratch.assign(2 * std::size_t{n_} - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    const Elem ai = a[i];
    if (!ai) continue;
    for (unsigned j = 0; j < n_; ++j) scratch[i + j] = F.add(scratch[i + j], F.mul(ai, b[j]));
  }
  const auto& m = top_modulus_.coeffs();
  for (std::size_t i = scratch.size(); i-- > n_;) {
    const Elem c = scratch[i];
    if (!c) continue;
    for (unsigned j = 0; j < n_; ++j) scratch[i - n_ + j] = F.sub(scratch[i - n_ + j], F.mul(c, m[j]));
  }
  std::copy(scratch.begin(), scratch.begin() + n_, out.begin());
}

FFElement FieldContext::mul(const FFElement& a, const FFElement& b) const {
  FFElement r = zero();
  std::vector<Elem> scratch;
  mul_into(a.coeffs, b.coeffs, r.coeffs, scratch);
  return r;
}

FFElement FieldContext::pow(const FFElement& a, const mpz_class& k) const {
  detail::check_input(k >= 0, "negative exponent");
  FFElement result = one();
  FFElement tmp = zero();
  std::vector<Elem> scratch;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    mul_into(result.coeffs, result.coeffs, tmp.coeffs, scratch);
    std::swap(result, tmp);
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      mul_into(result.coeffs, a.coeffs, tmp.coeffs, scratch);
      std::swap(result, tmp);
    }
  }
  return result;
}

FFElement FieldContext::inv(const FFElement& a) const {
  detail::check_input(!a.is_zero(), "zero has no inverse");
  return pow(a, size_ - 2);
}

void FieldContext::frobenius_into(std::span<const Elem> a, std::span<Elem> out) const {
  const BaseField& F = *base_;
  std::fill(out.begin(), out.end(), 0);
  for (unsigned j = 0; j < n_; ++j) {
    const Elem aj = a[j];
    if (!aj) continue;
    const Elem* col = frob_.data() + std::size_t{j} * n_;
    for (unsigned i = 0; i < n_; ++i) out[i] = F.add(out[i], F.mul(aj, col[i]));
  }
}

FFElement FieldContext::frobenius_once(const FFElement& a) const {
  FFElement r = zero();
  frobenius_into(a.coeffs, r.coeffs);
  return r;
}

std::vector<FFElement> FieldContext::conjugates(const FFElement& a, unsigned count) const {
  std::vector<FFElement> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(a);
  for (unsigned i = 1; i < count; ++i) out.push_back(frobenius_once(out.back()));
  return out;
}

// ---------------------------------------------------------------------------

FFElement frobenius(const FieldContext& ctx, const FFElement& a, std::uint64_t i) {
  ctx.validate(a);
  FFElement r = a;
  for (std::uint64_t k = 0, steps = i % ctx.n(); k < steps; ++k) r = ctx.frobenius_once(r);
  return r;
}

FFElement trace_to_subfield(const FieldContext& ctx, const FFElement& a, unsigned m) {
  ctx.validate(a);
  detail::check_input(m >= 1 && ctx.n() % m == 0, "subfield degree " + std::to_string(m) + " does not divide n = " + std::to_string(ctx.n()));
  FFElement acc = a, cur = a;
  for (unsigned j = 1; j < ctx.n() / m; ++j) {
    for (unsigned s = 0; s < m; ++s) cur = ctx.frobenius_once(cur);
    acc = ctx.add(acc, cur);
  }
  return acc;
}

bool in_subfield(const FieldContext& ctx, const FFElement& a, unsigned m) { return frobenius(ctx, a, m) == a; }

mpz_class multiplicative_order(const FieldContext& ctx, const FFElement& a) {
  ctx.validate(a);
  detail::check_input(!a.is_zero(), "multiplicative order of zero is undefined");
  mpz_class t = ctx.size() - 1;
  const FFElement one = ctx.one();
  for (const auto& [r, e] : ctx.qn_minus_1().factors()) {
    for (unsigned i = 0; i < e; ++i) {
      const mpz_class cand = t / r;
      if (!(ctx.pow(a, cand) == one)) break;
      t = cand;
    }
  }
  return t;
}

bool is_primitive(const FieldContext& ctx, const FFElement& a) {
  ctx.validate(a);
  if (a.is_zero()) return false;
  const mpz_class group = ctx.size() - 1;
  const FFElement one = ctx.one();
  if (group == 1) return a == one;
  for (const auto& f : ctx.qn_minus_1().factors()) {
    if (ctx.pow(a, group / f.prime) == one) return false;
  }
  return true;
}

std::string to_string(const FFElement& a) {
  std::string s;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.coeffs[i]);
  }
  return s;
}

FFElement parse_element(const FieldContext& ctx, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '[' && ch != ']') s += ch;
  detail::check_input(!s.empty(), "empty element");
  FFElement a = ctx.zero();
  std::size_t pos = 0, i = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    detail::check_input(!tok.empty() && tok.size() < 10 &&
                            std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return std::isdigit(ch); }),
                        "malformed coordinate '" + tok + "'");
    detail::check_input(i < ctx.n(), "element has more than n = " + std::to_string(ctx.n()) + " coordinates");
    const auto c = std::stoul(tok);
    detail::check_input(c < ctx.q(), "coordinate " + tok + " not below q = " + std::to_string(ctx.q()));
    a.coeffs[i++] = static_cast<FieldContext::Elem>(c);
    pos = comma + 1;
  }
  return a;
}

}  // namespace knorm

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/integer.hpp"
#include "oracles.hpp"

using namespace knorm;

namespace {

FFElement random_element(const FieldContext& ctx, std::mt19937_64& rng) {
  FFElement a = ctx.zero();
  for (auto& c : a.coeffs) c = static_cast<FieldContext::Elem>(rng() % ctx.q());
  return a;
}

FFElement elem(std::initializer_list<FieldContext::Elem> c) { return FFElement{std::vector<FieldContext::Elem>(c)}; }

}  // namespace

TEST_CASE("build_field: degree one over F_2 uses the modulus x") {
  const auto ctx = build_field(2, 1, 1);
  CHECK(ctx->q() == 2);
  CHECK(ctx->n() == 1);
  CHECK(to_string(ctx->top_modulus()) == "x");
  CHECK(ctx->size() == 2);
}

TEST_CASE("build_field: q = 5, n = 7 factors x^7 - 1 into a line and a sextic") {
  const auto ctx = build_field(5, 1, 7);
  const auto& f = ctx->xn_minus_1();
  REQUIRE(f.distinct() == 2);
  CHECK(to_string(f.factors()[0].poly) == "4 + x");
  CHECK(to_string(f.factors()[1].poly) == "1 + x + x^2 + x^3 + x^4 + x^5 + x^6");
  CHECK(f.factors()[0].multiplicity == 1);
  CHECK(f.factors()[1].multiplicity == 1);
}

TEST_CASE("build_field: q = 9, n = 2 has q^n - 1 = 2^4 * 5") {
  const auto ctx = build_field(3, 2, 2);
  CHECK(ctx->q() == 9);
  CHECK(ctx->qn_minus_1().to_string() == "2^4 * 5");
  CHECK(is_irreducible(ctx->top_modulus()));
}

TEST_CASE("build_field: identical inputs give identical moduli") {
  const auto a = build_field(3, 2, 5), b = build_field(3, 2, 5);
  CHECK(a->top_modulus() == b->top_modulus());
  CHECK(a->base_modulus() == b->base_modulus());
  CHECK(a->frobenius_matrix() == b->frobenius_matrix());
}

TEST_CASE("build_field: rejects non prime characteristic and zero degrees") {
  CHECK_THROWS_AS(build_field(6, 1, 2), InputError);
  CHECK_THROWS_AS(build_field(2, 0, 2), InputError);
  CHECK_THROWS_AS(build_field(2, 1, 0), InputError);
}

TEST_CASE("build_field: the least irreducible modulus is the least of all irreducibles") {
  const auto F = BaseField::create(3, 1);
  for (unsigned d = 1; d <= 4; ++d) {
    const FqPoly least = least_irreducible(F, d);
    for (const auto& g : oracle::monic_polys(F, d)) {
      if (g == least) break;
      // every smaller monic polynomial (with nonzero constant for d > 1) is reducible
      if (d > 1 && g.coeff(0) == 0) continue;
      const auto fg = oracle::trial_factor_poly(g);
      const bool irreducible = fg.size() == 1 && fg[0].second == 1;
      CHECK_FALSE(irreducible);
    }
    const auto fac = oracle::trial_factor_poly(least);
    CHECK(fac.size() == 1);
    CHECK(fac[0].second == 1);
  }
}

TEST_CASE("frobenius: identity cases and the F_4 example") {
  const auto F4 = build_field(2, 1, 2);
  REQUIRE(to_string(F4->top_modulus()) == "1 + x + x^2");
  const FFElement u = F4->v();
  CHECK(frobenius(*F4, u, 1) == elem({1, 1}));
  CHECK(frobenius(*F4, u, 0) == u);
  CHECK(frobenius(*F4, u, 2) == u);

  const auto ctx = build_field(3, 2, 3);
  for (FieldContext::Elem c = 0; c < 9; ++c)
    for (unsigned i = 0; i < 5; ++i) CHECK(frobenius(*ctx, ctx->embed(c), i) == ctx->embed(c));
}

TEST_CASE("frobenius: additive and multiplicative on random samples") {
  std::mt19937_64 rng(11);
  for (auto [p, e, n] : {std::tuple{2u, 1u, 7u}, {3u, 2u, 4u}, {5u, 1u, 6u}, {2u, 3u, 5u}}) {
    const auto ctx = build_field(p, e, n);
    for (int t = 0; t < 100; ++t) {
      const auto a = random_element(*ctx, rng), b = random_element(*ctx, rng);
      const unsigned i = static_cast<unsigned>(rng() % 9);
      CHECK(frobenius(*ctx, ctx->add(a, b), i) == ctx->add(frobenius(*ctx, a, i), frobenius(*ctx, b, i)));
      CHECK(frobenius(*ctx, ctx->mul(a, b), i) == ctx->mul(frobenius(*ctx, a, i), frobenius(*ctx, b, i)));
      CHECK(frobenius(*ctx, a, 1) == ctx->pow(a, mpz_class(ctx->q())));
    }
  }
}

TEST_CASE("field axioms on 1000 seeded triples") {
  std::mt19937_64 rng(2024);
  const auto ctx = build_field(3, 2, 5);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_element(*ctx, rng), b = random_element(*ctx, rng), c = random_element(*ctx, rng);
    REQUIRE(ctx->mul(ctx->mul(a, b), c) == ctx->mul(a, ctx->mul(b, c)));
    REQUIRE(ctx->add(ctx->add(a, b), c) == ctx->add(a, ctx->add(b, c)));
    REQUIRE(ctx->mul(a, ctx->add(b, c)) == ctx->add(ctx->mul(a, b), ctx->mul(a, c)));
    REQUIRE(ctx->mul(a, b) == ctx->mul(b, a));
    REQUIRE(ctx->add(a, ctx->neg(a)) == ctx->zero());
    if (!a.is_zero()) REQUIRE(ctx->mul(a, ctx->inv(a)) == ctx->one());
  }
  CHECK_THROWS_AS(ctx->inv(ctx->zero()), InputError);
}

TEST_CASE("trace_to_subfield: trivial cases") {
  const auto ctx = build_field(2, 1, 6);
  std::mt19937_64 rng(5);
  const auto a = random_element(*ctx, rng);
  CHECK(trace_to_subfield(*ctx, a, 6) == a);
  CHECK(trace_to_subfield(*ctx, ctx->zero(), 3) == ctx->zero());
  CHECK_THROWS_AS(trace_to_subfield(*ctx, a, 4), InputError);
}

TEST_CASE("trace_to_subfield: q = 2, n = 4, m = 2 lands in F_4 for all 16 elements") {
  const auto ctx = build_field(2, 1, 4);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const auto b = trace_to_subfield(*ctx, ctx->from_index(i), 2);
    CHECK(ctx->pow(b, mpz_class(4)) == b);
  }
}

TEST_CASE("trace_to_subfield: F_{q^m}-linear and onto the subfield, exhaustively") {
  for (auto [p, e, n, m] : {std::tuple{2u, 1u, 6u, 2u}, {2u, 1u, 6u, 3u}, {3u, 1u, 4u, 2u}, {2u, 2u, 4u, 2u}, {3u, 1u, 6u, 3u}}) {
    const auto ctx = build_field(p, e, n);
    const std::uint64_t size = *ctx->size_u64();
    REQUIRE(size <= 4096);
    std::vector<FFElement> sub;
    for (std::uint64_t i = 0; i < size; ++i)
      if (in_subfield(*ctx, ctx->from_index(i), m)) sub.push_back(ctx->from_index(i));
    std::uint64_t expected = 1;
    for (unsigned i = 0; i < m; ++i) expected *= ctx->q();
    REQUIRE(sub.size() == expected);

    std::set<std::uint64_t> image;
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto a = ctx->from_index(i);
      const auto t = trace_to_subfield(*ctx, a, m);
      image.insert(ctx->index_of(t));
      const auto& c = sub[i % sub.size()];
      const auto b = ctx->from_index((i * 7 + 3) % size);
      CHECK(trace_to_subfield(*ctx, ctx->add(ctx->mul(c, a), b), m) ==
            ctx->add(ctx->mul(c, t), trace_to_subfield(*ctx, b, m)));
    }
    CHECK(image.size() == sub.size());
  }
}

TEST_CASE("factor_integer: small examples and trial division agreement") {
  CHECK(factor_integer(1).factors().empty());
  CHECK(factor_integer(1).to_string() == "1");
  CHECK(factor_integer(80).to_string() == "2^4 * 5");
  CHECK(factor_integer(78124).to_string() == "2^2 * 19531");
  CHECK(oracle::is_prime_u64(19531));

  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t m = 1 + rng() % 1'000'000'000'000ull;
    const auto f = factor_integer(mpz_class(std::to_string(m)));
    const auto ref = oracle::trial_factor(m);
    REQUIRE(f.factors().size() == ref.size());
    auto it = ref.begin();
    for (const auto& pp : f.factors()) {
      CHECK(pp.prime == mpz_class(std::to_string(it->first)));
      CHECK(pp.exponent == it->second);
      ++it;
    }
    CHECK(f.product() == f.value());
  }
  CHECK_THROWS_AS(factor_integer(0), InputError);
}

TEST_CASE("factor_integer: large values used elsewhere") {
  CHECK(factor_integer(pow_ui(13, 13) - 1).to_string() == "2^2 * 3 * 53 * 264031 * 1803647");
  CHECK(factor_integer(pow_ui(11, 16) - 1).to_string() == "2^6 * 3 * 5 * 17 * 61 * 7321 * 6304673");
  CHECK(factor_integer(pow_ui(3, 9) - 1).to_string() == "2 * 13 * 757");
  const mpz_class big = pow_ui(2, 89) - 1;  // Mersenne prime
  CHECK(factor_integer(big).factors().size() == 1);
  const mpz_class semi = mpz_class("1000000007") * mpz_class("998244353") * mpz_class("1000000009");
  const auto f = factor_integer(semi);
  CHECK(f.to_string() == "998244353 * 1000000007 * 1000000009");
}

TEST_CASE("factor_integer: budget exhaustion is an error, never a partial answer") {
  FactorOptions opts;
  opts.rho_budget = 10;
  opts.use_default_cache = false;
  const mpz_class semi = mpz_class("1000000007") * mpz_class("1000000009");
  CHECK_THROWS_AS(factor_integer(semi, opts), BudgetExceeded);
}

TEST_CASE("FactoredInt validation") {
  CHECK_NOTHROW(FactoredInt::from_factors({{2, 3}, {5, 1}}));
  CHECK_THROWS_AS(FactoredInt::from_factors({{5, 1}, {2, 3}}), InputError);
  CHECK_THROWS_AS(FactoredInt::from_factors({{4, 1}}), InputError);
  CHECK_THROWS_AS(FactoredInt::from_factors({{3, 0}}), InputError);
  CHECK(FactoredInt::from_factors({{2, 3}, {5, 1}}).value() == 40);
  CHECK(euler_phi(factor_integer(80)) == 32);
  CHECK(divisor_count(factor_integer(720720)) == 240);
}

TEST_CASE("factor cache: round trip, append and malformed lines") {
  const auto dir = std::filesystem::temp_directory_path() / "knorm_cache_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "cache.txt";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "80 = 2^4 * 5\n";
    out << "81 = 3^3\n";           // wrong product
    out << "garbage line\n";       // no '='
    out << "15 = 15\n";            // composite listed as prime
  }
  auto cache = std::make_shared<FactorCache>(path);
  CHECK(cache->size() == 1);
  CHECK(cache->warnings().size() == 3);
  REQUIRE(cache->lookup(80).has_value());
  CHECK(cache->lookup(80)->to_string() == "2^4 * 5");

  FactorOptions opts;
  opts.cache = cache;
  const mpz_class v = pow_ui(7, 21) - 1;  // above 40 bits, so stored
  const auto f = factor_integer(v, opts);
  CHECK(cache->lookup(v).has_value());
  FactorCache reloaded(path);
  REQUIRE(reloaded.lookup(v).has_value());
  CHECK(*reloaded.lookup(v) == f);
  std::filesystem::remove_all(dir);
}

TEST_CASE("multiplicative_order: examples") {
  const auto ctx = build_field(5, 1, 3);
  CHECK(multiplicative_order(*ctx, ctx->one()) == 1);
  CHECK(multiplicative_order(*ctx, ctx->embed(4)) == 2);
  CHECK_THROWS_AS(multiplicative_order(*ctx, ctx->zero()), InputError);

  // F_27 = F_3[x]/(x^3 - x - 2); the class of x has order 26.
  const auto F3 = BaseField::create(3, 1);
  const auto f27 = build_extension(F3, parse_poly(F3, "1 + 2*x + x^3"));
  CHECK(multiplicative_order(*f27, f27->v()) == 26);
  CHECK(oracle::brute_order(*f27, f27->v()) == 26);
}

TEST_CASE("multiplicative_order agrees with brute powering") {
  std::mt19937_64 rng(17);
  for (auto [p, e, n] : {std::tuple{2u, 1u, 10u}, {3u, 1u, 6u}, {2u, 2u, 5u}, {7u, 1u, 3u}}) {
    const auto ctx = build_field(p, e, n);
    for (int t = 0; t < 40; ++t) {
      auto a = random_element(*ctx, rng);
      if (a.is_zero()) continue;
      CHECK(multiplicative_order(*ctx, a) == oracle::brute_order(*ctx, a));
    }
  }
}

TEST_CASE("is_primitive: examples") {
  const auto F4 = build_field(2, 1, 2);
  CHECK_FALSE(is_primitive(*F4, F4->one()));
  CHECK_FALSE(is_primitive(*F4, F4->zero()));
  CHECK(is_primitive(*F4, elem({0, 1})));
  CHECK(is_primitive(*F4, elem({1, 1})));

  const auto F25 = build_field(5, 1, 2);
  int count = 0;
  for (std::uint64_t i = 0; i < 25; ++i) count += is_primitive(*F25, F25->from_index(i));
  CHECK(count == 8);
}

TEST_CASE("is_primitive: exhaustive count equals phi(q^n - 1) for q^n <= 10^5") {
  for (auto q : oracle::prime_powers_upto(64)) {
    const auto [p, e] = oracle::split_q(q);
    std::uint64_t size = q;
    for (unsigned n = 1; size <= 100'000; ++n, size *= q) {
      if (n > 1 && q > 16 && size > 5000) break;  // keep the sweep short for large q
      const auto ctx = build_field(p, e, n);
      std::uint64_t count = 0;
      for (std::uint64_t i = 0; i < size; ++i) count += is_primitive(*ctx, ctx->from_index(i));
      CHECK_MESSAGE(count == oracle::phi_u64(size - 1), "q=" << q << " n=" << n);
    }
  }
}

TEST_CASE("element parsing and indices") {
  const auto ctx = build_field(3, 1, 4);
  CHECK(parse_element(*ctx, "1,2") == elem({1, 2, 0, 0}));
  CHECK(parse_element(*ctx, "[0, 1, 2, 1]") == elem({0, 1, 2, 1}));
  CHECK_THROWS_AS(parse_element(*ctx, "1,3"), InputError);
  CHECK_THROWS_AS(parse_element(*ctx, "1,1,1,1,1"), InputError);
  CHECK_THROWS_AS(parse_element(*ctx, "a"), InputError);
  for (std::uint64_t i = 0; i < 81; ++i) CHECK(ctx->index_of(ctx->from_index(i)) == i);
  CHECK_THROWS_AS(ctx->from_index(81), InputError);
}

TEST_CASE("concurrent first use of the lazy factorizations") {
  const auto ctx = build_field(2, 1, 30);
  std::vector<std::thread> ts;
  std::vector<std::string> seen(4);
  for (int t = 0; t < 4; ++t)
    ts.emplace_back([&, t] { seen[t] = ctx->qn_minus_1().to_string() + "|" + std::to_string(ctx->xn_minus_1().distinct()); });
  for (auto& th : ts) th.join();
  for (const auto& s : seen) CHECK(s == seen[0]);
  CHECK(ctx->qn_minus_1().product() == ctx->size() - 1);
}

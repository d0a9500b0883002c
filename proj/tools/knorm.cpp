// knorm: command line front end for the k-normal toolkit.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "knorm/census.hpp"
#include "knorm/conjecture.hpp"
#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/knormal.hpp"
#include "knorm/practical.hpp"
#include "knorm/report.hpp"
#include "knorm/sieve.hpp"
#include "knorm/survey.hpp"
#include "knorm/trace_construct.hpp"

using namespace knorm;

namespace {

constexpr const char* kCacheEnv = "KNORM_FACTOR_CACHE";

struct Common {
  unsigned threads = 1;
  bool csv = false;
};

BaseFieldPtr base_for(std::uint64_t q) {
  const auto pe = prime_power_decompose(q);
  detail::check_input(pe.has_value(), std::to_string(q) + " is not a prime power");
  return BaseField::create(pe->first, pe->second);
}

FieldPtr field_for(std::uint64_t q, unsigned n) {
  const auto pe = prime_power_decompose(q);
  detail::check_input(pe.has_value(), std::to_string(q) + " is not a prime power");
  return build_field(pe->first, pe->second, n);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string yn(bool b) { return b ? "true" : "false"; }

int fail(const char* kind, const std::string& msg, int code) {
  std::string line = msg;
  for (auto& c : line)
    if (c == '\n') c = ' ';
  std::cerr << "error: " << kind << ": " << line << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting, constructing and checking k-normal elements of finite fields"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  // factor-xn
  std::uint64_t fx_q = 0;
  unsigned fx_n = 0;
  auto* fx = app.add_subcommand("factor-xn", "Factor x^n - 1 over F_q");
  fx->add_option("--q", fx_q)->required();
  fx->add_option("--n", fx_n)->required();

  // count
  std::uint64_t ct_q = 0, ct_cap = kDefaultEnumerationCap;
  unsigned ct_n = 0;
  std::optional<unsigned> ct_k;
  auto* ct = app.add_subcommand("count", "N_k from the divisor sum, with a brute census column when within cap");
  ct->add_option("--q", ct_q)->required();
  ct->add_option("--n", ct_n)->required();
  ct->add_option("--k", ct_k);
  ct->add_option("--cap", ct_cap, "Enumeration cap for the census column");
  ct->add_flag("--csv", common.csv);

  // order
  std::uint64_t or_q = 0;
  unsigned or_n = 0;
  std::string or_elem;
  auto* ord = app.add_subcommand("order", "F_q-order, normality index and primitivity of an element");
  ord->add_option("--q", or_q)->required();
  ord->add_option("--n", or_n)->required();
  ord->add_option("--element", or_elem, "Coordinates c0,c1,... over F_q")->required();

  // construct
  std::uint64_t cs_q = 0, cs_seed = 1;
  unsigned cs_n = 0;
  std::string cs_f;
  auto* cs = app.add_subcommand("construct", "k-normal element L_f(beta) from a normal beta");
  cs->add_option("--q", cs_q)->required();
  cs->add_option("--n", cs_n)->required();
  cs->add_option("--f", cs_f, "Monic divisor of x^n - 1, e.g. '4 + x' or [4,1]")->required();
  cs->add_option("--seed", cs_seed);

  // sieve
  std::uint64_t sv_q = 0;
  unsigned sv_n = 0;
  std::optional<unsigned> sv_k;
  bool sv_all = false;
  auto* sv = app.add_subcommand("sieve", "Sieve verdicts for primitive k-normal existence");
  sv->add_option("--q", sv_q)->required();
  sv->add_option("--n", sv_n)->required();
  auto* sv_k_opt = sv->add_option("--k", sv_k);
  sv->add_flag("--all-k", sv_all)->excludes(sv_k_opt);
  sv->add_flag("--csv", common.csv);

  // practical scan
  auto* pr = app.add_subcommand("practical", "Practical number tools");
  pr->require_subcommand(1);
  std::vector<std::uint64_t> ps_qs;
  std::uint64_t ps_nmax = 0;
  auto* ps = pr->add_subcommand("scan", "phi-practical and F_q-practical flags for n = 1..n-max");
  ps->add_option("--q-list", ps_qs)->required()->delimiter(',');
  ps->add_option("--n-max", ps_nmax)->required();

  // lift
  std::uint64_t lf_q = 0, lf_seed = 1;
  std::optional<std::uint32_t> lf_p;
  unsigned lf_s = 0;
  std::string lf_f;
  auto* lf = app.add_subcommand("lift", "Primitive element of prescribed F_q-order in F_{q^{p^2 s}} via the trace");
  lf->add_option("--q", lf_q)->required();
  lf->add_option("--p", lf_p, "Characteristic (checked against q)");
  lf->add_option("--s", lf_s)->required();
  lf->add_option("--f", lf_f, "Monic divisor of x^s - 1")->required();
  lf->add_option("--seed", lf_seed);

  // conjecture
  std::uint32_t cj_pmax = 13;
  auto* cj = app.add_subcommand("conjecture", "Roots of x^p - x - a for primitive roots a");
  cj->add_option("--p-max", cj_pmax);
  cj->add_flag("--csv", common.csv);

  // survey
  std::string sy_grid, sy_out;
  std::uint64_t sy_seed = 1;
  auto* sy = app.add_subcommand("survey", "Sweep a (q, n, k) grid into a JSON lines file");
  sy->add_option("--grid", sy_grid)->required();
  sy->add_option("--out", sy_out)->required();
  sy->add_option("--seed", sy_seed);

  // hmargin
  std::string hm_q;
  unsigned long hm_n = 0;
  auto* hm = app.add_subcommand("hmargin", "Certified enclosure of h(n, q) and the k range it allows");
  hm->add_option("--q", hm_q)->required();
  hm->add_option("--n", hm_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("input", e.what(), 2);
  }

  try {
    if (const char* path = std::getenv(kCacheEnv); path && *path) {
      auto cache = std::make_shared<FactorCache>(path);
      set_default_factor_cache(cache);
    }

    if (*fx) {
      const auto f = factor_xn_minus_1(base_for(fx_q), fx_n);
      Json j = to_json(f);
      j["n"] = fx_n;
      emit(j);
    } else if (*ct) {
      const auto base = base_for(ct_q);
      detail::check_input(ct_n >= 1, "extension degree n must be >= 1");
      detail::check_input(!ct_k || *ct_k <= ct_n, "k exceeds n");
      const FactoredPoly xn = factor_xn_minus_1(base, ct_n);
      std::optional<Census> census;
      if (pow_ui(ct_q, ct_n) <= ct_cap) census = brute_census(*field_for(ct_q, ct_n), {}, ct_cap, common.threads);
      const unsigned lo = ct_k ? *ct_k : 0, hi = ct_k ? *ct_k : ct_n;
      Json rows = Json::array();
      mpz_class total = 0;
      if (common.csv) std::cout << "k,N_k,census_N_k\n";
      for (unsigned k = lo; k <= hi; ++k) {
        const mpz_class nk = count_k_normals(xn, k);
        total += nk;
        if (common.csv) {
          std::cout << k << "," << nk.get_str() << "," << (census ? std::to_string(census->n_k[k]) : "") << "\n";
        } else {
          Json r{{"k", k}, {"N_k", nk.get_str()}};
          r["census_N_k"] = census ? Json(std::to_string(census->n_k[k])) : Json(nullptr);
          rows.push_back(r);
        }
      }
      if (!common.csv) {
        Json j{{"q", ct_q}, {"n", ct_n}, {"rows", rows}};
        if (!ct_k) j["total"] = total.get_str();
        emit(j);
      }
    } else if (*ord) {
      const auto ctx = field_for(or_q, or_n);
      const FFElement a = parse_element(*ctx, or_elem);
      const OrderProfile prof = order_profile(*ctx, a);
      Json j{{"q", or_q}, {"n", or_n}, {"element", to_string(a)}, {"fq_order", to_string(prof.fq_order)},
             {"k", prof.k}, {"primitive", prof.is_primitive}};
      j["multiplicative_order"] = a.is_zero() ? Json(nullptr) : Json(multiplicative_order(*ctx, a).get_str());
      emit(j);
    } else if (*cs) {
      const auto ctx = field_for(cs_q, cs_n);
      const FqPoly f = parse_poly(ctx->base_ptr(), cs_f);
      require_divisor_of_xn_minus_1(*ctx, f);
      const FFElement beta = find_normal(*ctx, cs_seed);
      const FFElement alpha = construct_k_normal(*ctx, beta, f);
      const FqPoly m = fq_order(*ctx, alpha);
      emit(Json{{"q", cs_q}, {"n", cs_n}, {"f", to_string(f)}, {"beta", to_string(beta)}, {"alpha", to_string(alpha)},
                {"fq_order", to_string(m)}, {"k", cs_n - static_cast<unsigned>(m.degree())}});
    } else if (*sv) {
      const auto ctx = field_for(sv_q, sv_n);
      std::vector<unsigned> ks;
      if (sv_k) {
        ks.push_back(*sv_k);
      } else {
        detail::check_input(sv_all || sv_n >= 2, "n must be >= 2");
        for (unsigned k = 1; k + 1 <= sv_n; ++k) ks.push_back(k);
      }
      Json rows = Json::array();
      if (common.csv) std::cout << sieve_csv_header() << "\n";
      for (unsigned k : ks) {
        const SieveReport r = sieve_verdict(*ctx, k);
        if (common.csv) std::cout << to_csv_row(r) << "\n";
        else rows.push_back(to_json(r));
      }
      if (!common.csv) emit(rows);
    } else if (*ps) {
      std::cout << "n, phi_practical";
      for (auto q : ps_qs) std::cout << ", fq_practical(" << q << ")";
      std::cout << "\n";
      for (const auto& row : practical_scan(ps_qs, ps_nmax)) {
        std::cout << row.n << ", " << yn(row.phi_practical);
        for (bool b : row.fq_practical) std::cout << ", " << yn(b);
        std::cout << "\n";
      }
    } else if (*lf) {
      const auto pe = prime_power_decompose(lf_q);
      detail::check_input(pe.has_value(), std::to_string(lf_q) + " is not a prime power");
      detail::check_input(!lf_p || *lf_p == pe->first, "--p does not match the characteristic of q");
      detail::check_input(lf_s >= 1, "s must be >= 1");
      const unsigned n = pe->first * pe->first * lf_s;
      const auto ctx = field_for(lf_q, n);
      const FqPoly f = parse_poly(ctx->base_ptr(), lf_f);
      const LiftResult r = lift_by_trace(*ctx, lf_s, f, lf_seed);
      Json j{{"q", lf_q}, {"p", pe->first}, {"s", lf_s}, {"n", n}, {"f", to_string(f)}};
      const Json body = to_json(r);
      for (const auto& [k, v] : body.items()) j[k] = v;
      j["k"] = n - static_cast<unsigned>(r.fq_order.degree());
      j["order_factors"] = factor_integer(r.order).to_string();
      emit(j);
    } else if (*cj) {
      detail::check_input(cj_pmax >= 3 && cj_pmax <= 1000, "--p-max must lie in 3..1000");
      Json all = Json::array();
      if (common.csv) std::cout << "p,a,irreducible,k_normality,primitive,order_factors\n";
      for (std::uint32_t p = 3; p <= cj_pmax; ++p) {
        if (!is_probable_prime(mpz_class(p))) continue;
        const auto rep = artin_schreier_check(p);
        if (!common.csv) {
          all.push_back(to_json(rep));
          continue;
        }
        if (rep.untested) std::cout << p << ",,untested,,,\n";
        for (const auto& inst : rep.instances)
          std::cout << p << "," << inst.a << "," << yn(inst.irreducible) << "," << inst.k_normality << ","
                    << yn(inst.primitive) << "," << inst.order_factors.to_string() << "\n";
      }
      if (!common.csv) emit(all);
    } else if (*sy) {
      const GridSpec grid = parse_grid(sy_grid);
      const SurveySummary s = run_survey(grid, SurveyOptions{sy_out, common.threads, sy_seed});
      std::cerr << "survey: " << s.fields << " fields, " << s.written << " records written, " << s.skipped
                << " already present\n";
    } else if (*hm) {
      detail::check_input(!hm_q.empty() && hm_q.find_first_not_of("0123456789") == std::string::npos, "--q must be an integer");
      const mpz_class q(hm_q);
      emit(to_json(h_margin(q, hm_n), q, hm_n));
    }
  } catch (const InputError& e) {
    return fail("input", e.what(), 2);
  } catch (const BudgetExceeded& e) {
    return fail("budget", e.what(), 3);
  } catch (const InternalError& e) {
    return fail("internal", e.what(), 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 4);
  }
  return 0;
}

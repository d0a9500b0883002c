#include "knorm/report.hpp"

namespace knorm {

std::string to_string(const mpq_class& r) { return r.get_str(); }

Json to_json(const FactoredInt& m) {
  Json factors = Json::array();
  for (const auto& f : m.factors()) factors.push_back(Json{{"prime", f.prime.get_str()}, {"exponent", f.exponent}});
  return Json{{"value", m.value().get_str()}, {"factorization", m.to_string()}, {"factors", factors}};
}

Json to_json(const FactoredPoly& f) {
  Json factors = Json::array();
  for (const auto& fac : f.factors())
    factors.push_back(Json{{"poly", to_string(fac.poly)}, {"degree", fac.poly.degree()}, {"multiplicity", fac.multiplicity}});
  return Json{{"q", f.field_ptr()->q()}, {"degree", f.degree()}, {"factors", factors}};
}

Json to_json(const SieveReport& r) {
  return Json{{"q", r.q},
              {"n", r.n},
              {"k", r.k},
              {"W_int", r.W_int.get_str()},
              {"W_poly", r.W_poly.get_str()},
              {"verdict", r.verdict},
              {"divisor_exists", r.divisor_exists},
              {"nf_lower_bound", to_string(r.nf_lower_bound)},
              {"theta", to_string(r.theta)},
              {"Theta", to_string(r.Theta)}};
}

Json to_json(const Census& c) {
  Json out{{"q", c.q}, {"n", c.n}, {"size", std::to_string(c.size)}};
  Json nk = Json::array(), pk = Json::array();
  for (auto v : c.n_k) nk.push_back(std::to_string(v));
  for (auto v : c.primitive_k) pk.push_back(std::to_string(v));
  out["N_k"] = nk;
  out["primitive_k"] = pk;
  Json nf = Json::array();
  for (const auto& r : c.nf)
    nf.push_back(Json{{"f", to_string(r.f)}, {"n_f", std::to_string(r.n_f)}, {"distinct_images", std::to_string(r.distinct_images)}});
  out["n_f"] = nf;
  return out;
}

Json to_json(const ArtinSchreierReport& r) {
  Json out{{"p", r.p}, {"untested", r.untested}};
  if (r.untested) out["reason"] = r.reason;
  if (r.group_order) out["group_order"] = r.group_order->to_string();
  Json rows = Json::array();
  for (const auto& inst : r.instances)
    rows.push_back(Json{{"a", inst.a},
                        {"irreducible", inst.irreducible},
                        {"order_is_square", inst.order_is_square},
                        {"k_normality", inst.k_normality},
                        {"primitive", inst.primitive},
                        {"order_factors", inst.order_factors.to_string()}});
  out["instances"] = rows;
  out["all_hold"] = r.all_hold();
  return out;
}

Json to_json(const HMargin& h, const mpz_class& q, unsigned long n) {
  return Json{{"q", q.get_str()},
              {"n", n},
              {"h_lower", h.h.lower_string(40)},
              {"h_upper", h.h.upper_string(40)},
              {"k_max", h.k_max},
              {"indeterminate", h.indeterminate}};
}

Json to_json(const LiftResult& r) {
  return Json{{"alpha", to_string(r.alpha)},
              {"beta", to_string(r.beta)},
              {"fq_order", to_string(r.fq_order)},
              {"order", r.order.get_str()},
              {"tries", r.tries}};
}

std::string sieve_csv_header() { return "q,n,k,W_int,W_poly,verdict,nf_lower_bound_num,nf_lower_bound_den"; }

std::string to_csv_row(const SieveReport& r) {
  return std::to_string(r.q) + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.W_int.get_str() + "," +
         r.W_poly.get_str() + "," + (r.verdict ? "true" : "false") + "," + r.nf_lower_bound.get_num().get_str() + "," +
         r.nf_lower_bound.get_den().get_str();
}

}  // namespace knorm

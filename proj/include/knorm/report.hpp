#pragma once

// Structured text for results. Keys keep insertion order; big integers
// and rationals are written as decimal strings.

#include <json.hpp>

#include <string>

#include "knorm/census.hpp"
#include "knorm/conjecture.hpp"
#include "knorm/fq_poly.hpp"
#include "knorm/integer.hpp"
#include "knorm/knormal.hpp"
#include "knorm/sieve.hpp"
#include "knorm/trace_construct.hpp"

namespace knorm {

using Json = nlohmann::ordered_json;

std::string to_string(const mpq_class& r);

Json to_json(const FactoredInt& m);
Json to_json(const FactoredPoly& f);
Json to_json(const SieveReport& r);
Json to_json(const Census& c);
Json to_json(const ArtinSchreierReport& r);
Json to_json(const HMargin& h, const mpz_class& q, unsigned long n);
Json to_json(const LiftResult& r);

/// `q,n,k,W_int,W_poly,verdict,nf_lower_bound_num,nf_lower_bound_den`.
std::string sieve_csv_header();
std::string to_csv_row(const SieveReport& r);

}  // namespace knorm

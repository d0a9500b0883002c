#include "knorm/survey.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "knorm/census.hpp"
#include "knorm/cyclotomic.hpp"
#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/integer.hpp"
#include "knorm/knormal.hpp"
#include "knorm/report.hpp"
#include "knorm/sieve.hpp"

namespace knorm {

namespace {

constexpr unsigned kMaxGridN = 64;
constexpr std::uint64_t kMaxGridQ = std::uint64_t{1} << 20;

using Key = std::tuple<std::uint64_t, unsigned, unsigned>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(const std::string& s, const std::string& item) {
  detail::check_input(!s.empty() && s.size() <= 18 && s.find_first_not_of("0123456789") == std::string::npos,
                      "grid item '" + item + "': '" + s + "' is not a nonnegative integer");
  return std::stoull(s);
}

// "a..b" or "a,b,c" (items may themselves be ranges).
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_ranges(const std::string& v, const std::string& item) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    auto comma = v.find(',', pos);
    if (comma == std::string::npos) comma = v.size();
    const std::string part = trim(std::string_view(v).substr(pos, comma - pos));
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      const auto x = parse_uint(part, item);
      out.emplace_back(x, x);
    } else {
      const auto a = parse_uint(trim(part.substr(0, dots)), item), b = parse_uint(trim(part.substr(dots + 2)), item);
      detail::check_input(a <= b, "grid item '" + item + "': empty range " + part);
      out.emplace_back(a, b);
    }
    pos = comma + 1;
  }
  return out;
}

KEndpoint parse_k_endpoint(const std::string& s, const std::string& item) {
  if (s == "n") return {true, 0};
  if (s.rfind("n-", 0) == 0) return {true, static_cast<long>(parse_uint(s.substr(2), item))};
  return {false, static_cast<long>(parse_uint(s, item))};
}

bool parse_switch(const std::string& v, const std::string& item) {
  if (v == "on" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "no" || v == "0") return false;
  throw InputError("grid item '" + item + "': expected on or off");
}

Key key_of_line(const std::string& line, std::size_t lineno) {
  try {
    const auto j = Json::parse(line);
    return {j.at("q").get<std::uint64_t>(), j.at("n").get<unsigned>(), j.at("k").get<unsigned>()};
  } catch (const nlohmann::json::exception&) {
    throw InputError("survey file line " + std::to_string(lineno) + " is not a survey record");
  }
}

// Cuts a trailing partial line and returns the keys already present.
std::set<Key> load_existing(const std::filesystem::path& path) {
  std::set<Key> keys;
  if (!std::filesystem::exists(path)) return keys;
  std::string data;
  {
    std::ifstream in(path, std::ios::binary);
    data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const auto last_nl = data.rfind('\n');
  const std::size_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
  if (keep != data.size()) {
    std::filesystem::resize_file(path, keep);
    data.resize(keep);
  }
  std::size_t pos = 0, lineno = 0;
  while (pos < data.size()) {
    const auto nl = data.find('\n', pos);
    ++lineno;
    const std::string line = data.substr(pos, nl - pos);
    if (!line.empty()) keys.insert(key_of_line(line, lineno));
    pos = nl + 1;
  }
  return keys;
}

struct Task {
  std::uint64_t q;
  unsigned n;
};

std::vector<Task> grid_tasks(const GridSpec& grid) {
  std::vector<Task> tasks;
  for (auto q : grid.qs)
    for (auto n : grid.ns) {
      if (grid.qn_max) {
        const mpz_class size = pow_ui(mpz_class(std::to_string(q)), n);
        if (size > mpz_class(std::to_string(*grid.qn_max))) continue;
      }
      tasks.push_back({q, n});
    }
  return tasks;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  GridSpec g;
  bool have_q = false, have_n = false;
  std::size_t pos = 0;
  const std::string s(text);
  while (pos < s.size()) {
    auto semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    const std::string item = trim(std::string_view(s).substr(pos, semi - pos));
    pos = semi + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    detail::check_input(eq != std::string::npos, "grid item '" + item + "' lacks '='");
    const std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
    if (key == "q") {
      detail::check_input(!have_q, "q given twice in grid");
      have_q = true;
      for (auto [a, b] : parse_ranges(val, item)) {
        detail::check_input(b <= kMaxGridQ, "grid item '" + item + "': q above " + std::to_string(kMaxGridQ));
        for (auto q = a; q <= b; ++q) {
          const bool pp = prime_power_decompose(q).has_value();
          if (a == b) detail::check_input(pp, "grid item '" + item + "': " + std::to_string(q) + " is not a prime power");
          if (pp) g.qs.push_back(q);
        }
      }
    } else if (key == "n") {
      detail::check_input(!have_n, "n given twice in grid");
      have_n = true;
      for (auto [a, b] : parse_ranges(val, item)) {
        detail::check_input(a >= 1 && b <= kMaxGridN, "grid item '" + item + "': n must lie in 1.." + std::to_string(kMaxGridN));
        for (auto n = a; n <= b; ++n) g.ns.push_back(static_cast<unsigned>(n));
      }
    } else if (key == "k") {
      const auto dots = val.find("..");
      detail::check_input(dots != std::string::npos, "grid item '" + item + "': expected lo..hi");
      g.k_lo = parse_k_endpoint(trim(val.substr(0, dots)), item);
      g.k_hi = parse_k_endpoint(trim(val.substr(dots + 2)), item);
    } else if (key == "qn_max") {
      g.qn_max = parse_uint(val, item);
    } else if (key == "cap") {
      g.cap = parse_uint(val, item);
    } else if (key == "census") {
      g.census = parse_switch(val, item);
    } else {
      throw InputError("unknown grid key '" + key + "'");
    }
  }
  detail::check_input(have_q && !g.qs.empty(), "grid has no prime power q");
  detail::check_input(have_n && !g.ns.empty(), "grid has no n");
  std::sort(g.qs.begin(), g.qs.end());
  g.qs.erase(std::unique(g.qs.begin(), g.qs.end()), g.qs.end());
  std::sort(g.ns.begin(), g.ns.end());
  g.ns.erase(std::unique(g.ns.begin(), g.ns.end()), g.ns.end());
  return g;
}

std::vector<std::string> survey_field(std::uint64_t q, unsigned n, const GridSpec& grid, std::uint64_t seed) {
  const auto pe = prime_power_decompose(q);
  detail::check_input(pe.has_value(), std::to_string(q) + " is not a prime power");
  const FieldPtr ctx = build_field(pe->first, pe->second, n);
  const long lo = std::max(0l, grid.k_lo.resolve(n));
  const long hi = grid.k_hi.resolve(n);
  detail::check_input(hi <= static_cast<long>(n), "k range exceeds n = " + std::to_string(n));
  const bool do_census = grid.census && ctx->size_u64() && *ctx->size_u64() <= grid.cap;

  std::map<long, SieveReport> sieve;
  std::vector<FqPoly> nf_polys;
  for (long k = std::max(1l, lo); k <= hi && k + 1 <= static_cast<long>(n); ++k) {
    auto rep = sieve_verdict(*ctx, static_cast<unsigned>(k));
    if (do_census && rep.divisor_exists && rep.nf_lower_bound > 0)
      for (auto& f : divisors_of_degree(ctx->xn_minus_1(), static_cast<unsigned>(k))) nf_polys.push_back(std::move(f));
    sieve.emplace(k, std::move(rep));
  }
  std::optional<Census> census;
  if (do_census) census = brute_census(*ctx, nf_polys, grid.cap, 1);

  std::optional<FFElement> beta;
  std::vector<std::string> lines;
  for (long k = lo; k <= hi; ++k) {
    const unsigned uk = static_cast<unsigned>(k);
    const mpz_class nk = count_k_normals(*ctx, uk);
    Json rec{{"q", q}, {"n", n}, {"k", uk}, {"N_k", nk.get_str()}};
    if (census) {
      rec["census_N_k"] = std::to_string(census->n_k[uk]);
      rec["census_primitive_k"] = std::to_string(census->primitive_k[uk]);
    } else {
      rec["census_N_k"] = nullptr;
      rec["census_primitive_k"] = nullptr;
    }
    if (auto it = sieve.find(k); it != sieve.end()) {
      const auto& r = it->second;
      rec["sieve"] = Json{{"W_int", r.W_int.get_str()},
                          {"W_poly", r.W_poly.get_str()},
                          {"verdict", r.verdict},
                          {"divisor_exists", r.divisor_exists},
                          {"nf_lower_bound", to_string(r.nf_lower_bound)}};
    } else {
      rec["sieve"] = nullptr;
    }
    Json nf = Json::array();
    if (census)
      for (const auto& c : census->nf)
        if (c.f.degree() == k)
          nf.push_back(Json{{"f", to_string(c.f)}, {"n_f", std::to_string(c.n_f)}, {"distinct_images", std::to_string(c.distinct_images)}});
    rec["n_f"] = nf;
    if (nk > 0) {
      if (!beta) beta = find_normal(*ctx, seed, grid.cap);
      const FqPoly f = divisors_of_degree(ctx->xn_minus_1(), uk).front();
      rec["witness_f"] = to_string(f);
      rec["witness"] = to_string(construct_k_normal(*ctx, *beta, f));
    } else {
      rec["witness_f"] = nullptr;
      rec["witness"] = nullptr;
    }
    lines.push_back(rec.dump());
  }
  return lines;
}

SurveySummary run_survey(const GridSpec& grid, const SurveyOptions& options) {
  detail::check_input(!options.out.empty(), "survey needs an output path");
  const std::set<Key> existing = load_existing(options.out);
  const std::vector<Task> tasks = grid_tasks(grid);

  SurveySummary summary;
  summary.fields = tasks.size();

  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<std::vector<std::string>>> done(tasks.size());
  std::exception_ptr failure;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> skipped_whole{0};

  auto complete = [&](const Task& t) {
    const long lo = std::max(0l, grid.k_lo.resolve(t.n)), hi = std::min<long>(grid.k_hi.resolve(t.n), t.n);
    for (long k = lo; k <= hi; ++k)
      if (!existing.count(Key{t.q, t.n, static_cast<unsigned>(k)})) return false;
    skipped_whole += hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    return true;
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size() && !stop; i = next++) {
      std::vector<std::string> lines;
      try {
        if (complete(tasks[i])) {
          std::lock_guard lk(mu);
          done[i].emplace();
          cv.notify_all();
          continue;
        }
        lines = survey_field(tasks[i].q, tasks[i].n, grid, options.seed);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
        cv.notify_all();
        return;
      }
      std::lock_guard lk(mu);
      done[i] = std::move(lines);
      cv.notify_all();
    }
  };

  std::ofstream out(options.out, std::ios::binary | std::ios::app);
  detail::check_input(static_cast<bool>(out), "cannot open " + options.out.string() + " for appending");
  std::thread writer([&] {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      std::vector<std::string> lines;
      {
        std::unique_lock lk(mu);
        cv.wait(lk, [&] { return done[i].has_value() || failure; });
        if (!done[i]) return;
        lines = std::move(*done[i]);
        done[i].reset();
      }
      std::string chunk;
      for (const auto& line : lines) {
        if (existing.count(key_of_line(line, 0))) {
          ++summary.skipped;
          continue;
        }
        chunk += line;
        chunk += '\n';
        ++summary.written;
      }
      if (!chunk.empty()) {
        out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        out.flush();
      }
    }
  });

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, options.threads); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  writer.join();
  if (failure) std::rethrow_exception(failure);
  summary.skipped += skipped_whole;
  detail::check_input(static_cast<bool>(out), "write to " + options.out.string() + " failed");
  return summary;
}

}  // namespace knorm

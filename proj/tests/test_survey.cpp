#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "knorm/error.hpp"
#include "knorm/field.hpp"
#include "knorm/knormal.hpp"
#include "knorm/report.hpp"
#include "knorm/survey.hpp"

using namespace knorm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "knorm_survey_test";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KNORM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = parse_grid("q=2..9;n=1..19;k=0..n");
  CHECK(g.qs == std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9});
  CHECK(g.ns.size() == 19);
  CHECK(g.k_lo.resolve(10) == 0);
  CHECK(g.k_hi.resolve(10) == 10);
  CHECK_FALSE(g.qn_max.has_value());
  CHECK(g.census);

  const auto h = parse_grid(" q = 3,5 ; n = 4 ; k = 1..n-1 ; qn_max = 1000 ; census = off ; cap = 50 ");
  CHECK(h.qs == std::vector<std::uint64_t>{3, 5});
  CHECK(h.ns == std::vector<unsigned>{4});
  CHECK(h.k_lo.resolve(4) == 1);
  CHECK(h.k_hi.resolve(4) == 3);
  CHECK(*h.qn_max == 1000);
  CHECK(h.cap == 50);
  CHECK_FALSE(h.census);
}

TEST_CASE("grid parse errors") {
  CHECK_THROWS_AS(parse_grid(""), InputError);
  CHECK_THROWS_AS(parse_grid("n=1..3"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2..3"), InputError);
  CHECK_THROWS_AS(parse_grid("q=6;n=2"), InputError);
  CHECK_THROWS_AS(parse_grid("q=5..2;n=2"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;n=0"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;n=1..3;k=1"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;n=1..3;k=a..n"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;n=1..3;colour=red"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;n=1..3;census=maybe"), InputError);
  CHECK_THROWS_AS(parse_grid("q=2;q=3;n=1"), InputError);
  CHECK_THROWS_AS(parse_grid("q2;n=1"), InputError);
}

TEST_CASE("field records carry the count and the census") {
  const auto g = parse_grid("q=5;n=7;k=0..n");
  const auto lines = survey_field(5, 7, g, 1);
  REQUIRE(lines.size() == 8);
  const auto ctx = build_field(5, 1, 7);
  for (unsigned k = 0; k <= 7; ++k) {
    const auto j = Json::parse(lines[k]);
    CHECK(j.at("q") == 5);
    CHECK(j.at("n") == 7);
    CHECK(j.at("k") == k);
    CHECK(j.at("N_k").get<std::string>() == count_k_normals(*ctx, k).get_str());
    CHECK(j.at("census_N_k").get<std::string>() == j.at("N_k").get<std::string>());
    CHECK(lines[k].find('\n') == std::string::npos);
  }
  const auto j1 = Json::parse(lines[1]);
  CHECK(j1.at("sieve").at("verdict") == true);
  CHECK(survey_field(5, 7, g, 1) == lines);
}

TEST_CASE("survey output is independent of the thread count") {
  const auto g = parse_grid("q=2..5;n=1..8;k=0..n");
  const auto a = scratch("a.jsonl"), b = scratch("b.jsonl");
  const auto sa = run_survey(g, {a, 1, 9});
  const auto sb = run_survey(g, {b, 3, 9});
  CHECK(sa.written == sb.written);
  CHECK(sa.written > 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("resume skips complete fields and cuts a partial trailing line") {
  const auto g = parse_grid("q=2,3;n=1..6;k=0..n");
  const auto full = scratch("full.jsonl"), part = scratch("part.jsonl");
  const auto s_full = run_survey(g, {full, 1, 4});
  const std::string expected = slurp(full);

  // A rerun writes nothing.
  const auto again = run_survey(g, {full, 1, 4});
  CHECK(again.written == 0);
  CHECK(slurp(full) == expected);

  // Keep the first third of the lines plus half of the next one.
  std::size_t cut = 0;
  for (int i = 0; i < static_cast<int>(s_full.written / 3); ++i) cut = expected.find('\n', cut) + 1;
  const std::size_t next = expected.find('\n', cut);
  {
    std::ofstream out(part, std::ios::binary);
    out << expected.substr(0, cut) << expected.substr(cut, (next - cut) / 2);
  }
  const auto resumed = run_survey(g, {part, 2, 4});
  CHECK(resumed.written + s_full.written / 3 == s_full.written);
  CHECK(slurp(part) == expected);
}

TEST_CASE("resume rejects a file that is not a survey") {
  const auto p = scratch("junk.jsonl");
  {
    std::ofstream out(p);
    out << "hello\n";
  }
  CHECK_THROWS_AS(run_survey(parse_grid("q=2;n=1..2"), {p, 1, 1}), InputError);
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli("count --q 5 --n 7") == 0);
  CHECK(run_cli("count --q 6 --n 2") == 2);
  CHECK(run_cli("count --q 5") == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("order --q 2 --n 2 --element 0,2") == 2);
  CHECK(run_cli("construct --q 5 --n 7 --f '1 + x^2'") == 2);
  CHECK(run_cli("sieve --q 5 --n 7 --k 9") == 2);
  CHECK(run_cli("survey --grid 'q=2;n=1;k=x' --out /dev/null") == 2);
  CHECK(run_cli("count --q 2 --n 1023 --k 500") == 3);
  CHECK(run_cli("hmargin --q 420 --n 420") == 0);
  CHECK(run_cli("practical scan --q-list 2,3 --n-max 20") == 0);
}

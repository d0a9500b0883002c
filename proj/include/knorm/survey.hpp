#pragma once

// Grid sweeps over (q, n, k) written as JSON lines, one record per point.
//
// Grid text: `;`-separated `key=value` items.
//   q=2..9 or q=2,3,5     prime powers; non prime powers inside a range are skipped
//   n=1..19               extension degrees
//   k=0..n                endpoints are integers, `n`, or `n-INT`
//   qn_max=1000000        only fields with q^n <= qn_max (optional)
//   cap=1000000           enumeration cap for the brute census (optional)
//   census=on|off         cross-check with the brute census (default on)

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knorm/limits.hpp"

namespace knorm {

struct KEndpoint {
  bool relative = false;  // n - offset when true
  long value = 0;         // absolute value, or the offset subtracted from n

  long resolve(unsigned n) const { return relative ? static_cast<long>(n) - value : value; }
};

struct GridSpec {
  std::vector<std::uint64_t> qs;
  std::vector<unsigned> ns;
  KEndpoint k_lo{false, 0}, k_hi{true, 0};
  std::optional<std::uint64_t> qn_max;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool census = true;
};

/// Throws InputError with the offending item on malformed text.
GridSpec parse_grid(std::string_view text);

struct SurveyOptions {
  std::filesystem::path out;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

struct SurveySummary {
  std::size_t fields = 0;
  std::size_t written = 0;
  std::size_t skipped = 0;
};

/// Appends the records that are not yet in `out`. A trailing partial line
/// left by an interrupted run is cut off first. Records are produced by a
/// worker pool and written in grid order by a single writer thread, one
/// field at a time, so the file only ever holds whole lines.
SurveySummary run_survey(const GridSpec& grid, const SurveyOptions& options);

/// The records of one field, each a JSON document on its own line.
std::vector<std::string> survey_field(std::uint64_t q, unsigned n, const GridSpec& grid, std::uint64_t seed);

}  // namespace knorm

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semnet {

// Parse failure tied to a 1-based input line.
struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct DegenerateDegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StageError : std::runtime_error {
  std::string stage;
  StageError(std::string stage_, const std::string& what_)
      : std::runtime_error("stage '" + stage_ + "': " + what_), stage(std::move(stage_)) {}
};

// ---------------------------------------------------------------------------
// Calendar dates (proleptic Gregorian, UTC)

struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (Howard Hinnant's civil-day algorithm).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

// "YYYY-MM-DD"
std::string format_date(const Date& d);
std::optional<Date> parse_date(std::string_view s);

// RFC 3339 timestamp ("2018-02-19T08:30:00Z", fractional seconds and
// numeric offsets accepted) -> Unix seconds. nullopt on malformed input.
std::optional<std::int64_t> parse_rfc3339(std::string_view s);
std::string format_rfc3339_utc(std::int64_t unix_seconds);

inline Date utc_day_of(std::int64_t unix_seconds) {
  std::int64_t days = unix_seconds / 86400;
  if (unix_seconds < 0 && unix_seconds % 86400 != 0) --days;
  return civil_from_days(days);
}

// ---------------------------------------------------------------------------
// UTF-8 and case folding

// Decodes permissively: an invalid byte is passed through as its own
// codepoint so no input ever fails to round-trip.
std::vector<std::uint32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<std::uint32_t>& cps);

// Lowercases ASCII, Latin-1 supplement and Latin Extended-A; other
// codepoints are left untouched.
std::uint32_t fold_codepoint(std::uint32_t cp);
std::string fold_case(std::string_view s);

// Letter/digit/underscore test used for hashtag tokenization. ASCII plus
// the common letter blocks; punctuation, symbol and emoji ranges excluded.
bool is_word_codepoint(std::uint32_t cp);

// ---------------------------------------------------------------------------
// Misc

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic per-task seed derivation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ 0x9e3779b97f4a7c15ull) ^ splitmix64(a) ^ (b * 0xff51afd7ed558ccdull + 1));
}

std::uint64_t fnv1a64(std::string_view s);

// Shortest round-trip decimal representation (locale independent).
std::string format_double(double v);

}  // namespace semnet

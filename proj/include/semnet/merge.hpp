#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace semnet {

// Levenshtein distance over Unicode codepoints, unit cost for
// insert/delete/substitute.
int edit_distance(std::string_view a, std::string_view b);

// Same metric, but returns limit+1 as soon as the distance is known to
// exceed `limit` (banded computation).
int edit_distance_bounded(std::string_view a, std::string_view b, int limit);

// Near-duplicate resolution: strings within the distance threshold of each
// other collapse onto one representative.
struct MergeMap {
  std::map<std::string, std::string> canonical;   // raw -> representative
  std::map<std::string, std::int64_t> frequencies;  // representative -> summed count

  const std::string& resolve(const std::string& raw) const;
};

// Groups strings whose pairwise distance chains stay within `threshold`;
// each group maps onto its most frequent member (ties: lexicographically
// smallest). Chains are followed transitively, so the result is idempotent.
MergeMap build_merge_map(const std::map<std::string, std::int64_t>& counts, int threshold = 2);

}  // namespace semnet

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/bigraph.hpp"
#include "semnet/merge.hpp"
#include "semnet/util.hpp"

namespace semnet {

// One tagged message. Hashtags are stored lowercased with the leading '#'
// stripped; the retweet fields are either both present or both absent.
struct TaggedRecord {
  std::string message_id;
  std::string author_id;
  bool author_verified = false;
  std::int64_t timestamp = 0;  // Unix seconds, UTC
  std::vector<std::string> hashtags;
  std::optional<std::string> retweeted_author_id;
  std::optional<bool> retweeted_author_verified;

  Date utc_day() const { return utc_day_of(timestamp); }
};

enum class RecordFormat { jsonl, csv };

struct ParseIssue {
  std::size_t line;
  std::string message;
};

struct ParseOptions {
  RecordFormat format = RecordFormat::jsonl;
  // strict: first malformed line throws ParseError; otherwise bad lines are
  // skipped and reported through `issues`.
  bool strict = true;
};

// '#'-prefixed tokens of letters/digits/underscore, case-folded.
std::vector<std::string> extract_hashtags(std::string_view text);

std::vector<TaggedRecord> parse_records(std::istream& is, const ParseOptions& opts,
                                        std::vector<ParseIssue>* issues = nullptr);

void write_records_jsonl(std::ostream& os, const std::vector<TaggedRecord>& records);

// Raw hashtag occurrence counts over the whole corpus.
std::map<std::string, std::int64_t> hashtag_counts(const std::vector<TaggedRecord>& records);

// One user-hashtag graph per UTC day that has at least one hashtag-bearing
// record. Hashtags pass through the merge map; entries are binary.
std::map<Date, BipartiteGraph> build_daily_hashtag_graphs(const std::vector<TaggedRecord>& records,
                                                          const MergeMap& merge_map);

// Verified (top) vs non-verified (bottom) users, linked when one retweeted
// the other at least once; same-layer retweets are discarded.
BipartiteGraph build_retweet_graph(const std::vector<TaggedRecord>& records);

}  // namespace semnet

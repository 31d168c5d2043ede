#include "semnet/record.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace semnet {

std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> out;
  const auto cps = utf8_decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (cps[i] != '#') {
      ++i;
      continue;
    }
    ++i;
    std::vector<std::uint32_t> tag;
    while (i < cps.size() && is_word_codepoint(cps[i])) tag.push_back(fold_codepoint(cps[i++]));
    if (!tag.empty()) out.push_back(utf8_encode(tag));
  }
  return out;
}

namespace {

// Strips leading '#', folds case, rejects embedded whitespace or '#'.
std::string normalize_hashtag(std::string_view raw, std::size_t lineno) {
  std::size_t start = 0;
  while (start < raw.size() && raw[start] == '#') ++start;
  const std::string folded = fold_case(raw.substr(start));
  for (char c : folded)
    if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw ParseError(lineno, "hashtag '" + std::string(raw) + "' contains '#' or whitespace");
  return folded;
}

TaggedRecord record_from_fields(std::size_t lineno, std::string id, std::string user_id,
                                std::optional<bool> verified, const std::string& created_at,
                                std::optional<std::vector<std::string>> hashtags,
                                std::optional<std::string> text,
                                std::optional<std::string> rt_user_id,
                                std::optional<bool> rt_verified) {
  if (id.empty()) throw ParseError(lineno, "missing id");
  if (user_id.empty()) throw ParseError(lineno, "missing user_id");
  const auto ts = parse_rfc3339(created_at);
  if (!ts) throw ParseError(lineno, "bad created_at '" + created_at + "'");
  if (rt_user_id.has_value() != rt_verified.has_value())
    throw ParseError(lineno, "rt_user_id and rt_verified must be given together");

  TaggedRecord r;
  r.message_id = std::move(id);
  r.author_id = std::move(user_id);
  r.author_verified = verified.value_or(false);
  r.timestamp = *ts;
  if (hashtags) {
    for (const auto& h : *hashtags) {
      std::string n = normalize_hashtag(h, lineno);
      if (!n.empty()) r.hashtags.push_back(std::move(n));
    }
  } else if (text) {
    r.hashtags = extract_hashtags(*text);
  }
  r.retweeted_author_id = std::move(rt_user_id);
  r.retweeted_author_verified = rt_verified;
  return r;
}

TaggedRecord parse_jsonl_line(std::size_t lineno, const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(lineno, "expected a JSON object");

  auto get_string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (j[key].is_string()) return j[key].get<std::string>();
    if (j[key].is_number_integer()) return std::to_string(j[key].get<std::int64_t>());
    throw ParseError(lineno, std::string("field '") + key + "' must be a string");
  };
  auto get_bool = [&](const char* key) -> std::optional<bool> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_boolean()) throw ParseError(lineno, std::string("field '") + key + "' must be a bool");
    return j[key].get<bool>();
  };

  std::optional<std::vector<std::string>> hashtags;
  if (j.contains("hashtags") && !j["hashtags"].is_null()) {
    if (!j["hashtags"].is_array()) throw ParseError(lineno, "field 'hashtags' must be an array");
    hashtags.emplace();
    for (const auto& h : j["hashtags"]) {
      if (!h.is_string()) throw ParseError(lineno, "hashtags entries must be strings");
      hashtags->push_back(h.get<std::string>());
    }
  }
  return record_from_fields(lineno, get_string("id").value_or(""), get_string("user_id").value_or(""),
                            get_bool("verified"), get_string("created_at").value_or(""), hashtags,
                            get_string("text"), get_string("rt_user_id"), get_bool("rt_verified"));
}

// RFC 4180-ish row splitting with quoted fields.
std::vector<std::string> split_csv_row(std::size_t lineno, const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(lineno, "unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

std::optional<bool> parse_bool_cell(std::size_t lineno, const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError(lineno, "bad boolean '" + s + "'");
}

}  // namespace

std::vector<TaggedRecord> parse_records(std::istream& is, const ParseOptions& opts,
                                        std::vector<ParseIssue>* issues) {
  std::vector<TaggedRecord> out;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;

  std::map<std::string, int> header;  // csv column name -> index
  auto csv_cell = [&](const std::vector<std::string>& row, const char* name) -> std::string {
    const auto it = header.find(name);
    if (it == header.end() || it->second >= static_cast<int>(row.size())) return {};
    return row[it->second];
  };

  auto handle = [&](const TaggedRecord& r) {
    if (!seen_ids.insert(r.message_id).second)
      throw ParseError(lineno, "duplicate message id '" + r.message_id + "'");
    out.push_back(r);
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      if (opts.format == RecordFormat::jsonl) {
        handle(parse_jsonl_line(lineno, line));
      } else {
        auto row = split_csv_row(lineno, line);
        if (header.empty()) {
          for (std::size_t i = 0; i < row.size(); ++i) header[row[i]] = static_cast<int>(i);
          if (!header.count("id") || !header.count("user_id") || !header.count("created_at"))
            throw ParseError(lineno, "csv header must name id, user_id, created_at");
          continue;
        }
        std::optional<std::vector<std::string>> hashtags;
        // an empty cell is "absent" (falls back to text extraction)
        if (header.count("hashtags") && !csv_cell(row, "hashtags").empty()) {
          hashtags.emplace();
          std::string cell = csv_cell(row, "hashtags");
          std::size_t pos = 0;
          while (pos < cell.size()) {  // space-separated tags inside the cell
            const auto sp = cell.find(' ', pos);
            const auto tok = cell.substr(pos, sp == std::string::npos ? sp : sp - pos);
            if (!tok.empty()) hashtags->push_back(tok);
            if (sp == std::string::npos) break;
            pos = sp + 1;
          }
        }
        std::optional<std::string> text;
        if (header.count("text") && !csv_cell(row, "text").empty()) text = csv_cell(row, "text");
        std::optional<std::string> rt;
        if (!csv_cell(row, "rt_user_id").empty()) rt = csv_cell(row, "rt_user_id");
        handle(record_from_fields(lineno, csv_cell(row, "id"), csv_cell(row, "user_id"),
                                  parse_bool_cell(lineno, csv_cell(row, "verified")),
                                  csv_cell(row, "created_at"), hashtags, text, rt,
                                  parse_bool_cell(lineno, csv_cell(row, "rt_verified"))));
      }
    } catch (const ParseError& e) {
      if (opts.strict) throw;
      if (issues) issues->push_back({e.line, e.what()});
    }
  }
  return out;
}

void write_records_jsonl(std::ostream& os, const std::vector<TaggedRecord>& records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.message_id;
    j["user_id"] = r.author_id;
    j["verified"] = r.author_verified;
    j["created_at"] = format_rfc3339_utc(r.timestamp);
    j["hashtags"] = r.hashtags;
    if (r.retweeted_author_id) {
      j["rt_user_id"] = *r.retweeted_author_id;
      j["rt_verified"] = *r.retweeted_author_verified;
    }
    os << j.dump() << '\n';
  }
}

std::map<std::string, std::int64_t> hashtag_counts(const std::vector<TaggedRecord>& records) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& r : records)
    for (const auto& h : r.hashtags) ++counts[h];
  return counts;
}

std::map<Date, BipartiteGraph> build_daily_hashtag_graphs(const std::vector<TaggedRecord>& records,
                                                          const MergeMap& merge_map) {
  std::map<Date, std::set<std::pair<std::string, std::string>>> incidences;
  for (const auto& r : records) {
    if (r.hashtags.empty()) continue;
    auto& day = incidences[r.utc_day()];
    for (const auto& h : r.hashtags) day.emplace(r.author_id, merge_map.resolve(h));
  }
  std::map<Date, BipartiteGraph> out;
  for (const auto& [day, pairs] : incidences) {
    std::map<std::string, int> users, tags;
    for (const auto& [u, h] : pairs) {
      users.emplace(u, 0);
      tags.emplace(h, 0);
    }
    std::vector<std::string> ul, tl;
    for (auto& [k, v] : users) v = static_cast<int>(ul.size()), ul.push_back(k);
    for (auto& [k, v] : tags) v = static_cast<int>(tl.size()), tl.push_back(k);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, h] : pairs) edges.emplace_back(users[u], tags[h]);
    out.emplace(day, BipartiteGraph::from_edges(std::move(ul), std::move(tl), edges));
  }
  return out;
}

BipartiteGraph build_retweet_graph(const std::vector<TaggedRecord>& records) {
  std::set<std::pair<std::string, std::string>> edges;  // (verified, non-verified)
  for (const auto& r : records) {
    if (!r.retweeted_author_id) continue;
    const bool rt_verified = *r.retweeted_author_verified;
    if (r.author_verified == rt_verified) continue;  // same-layer retweet
    if (r.author_verified)
      edges.emplace(r.author_id, *r.retweeted_author_id);
    else
      edges.emplace(*r.retweeted_author_id, r.author_id);
  }
  std::map<std::string, int> top, bot;
  for (const auto& [v, u] : edges) {
    top.emplace(v, 0);
    bot.emplace(u, 0);
  }
  std::vector<std::string> tl, bl;
  for (auto& [k, v] : top) v = static_cast<int>(tl.size()), tl.push_back(k);
  for (auto& [k, v] : bot) v = static_cast<int>(bl.size()), bl.push_back(k);
  std::vector<std::pair<int, int>> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& [v, u] : edges) idx_edges.emplace_back(top[v], bot[u]);
  return BipartiteGraph::from_edges(std::move(tl), std::move(bl), idx_edges);
}

}  // namespace semnet

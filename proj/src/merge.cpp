#include "semnet/merge.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "semnet/util.hpp"

namespace semnet {

int edit_distance(std::string_view a, std::string_view b) {
  const auto ca = utf8_decode(a);
  const auto cb = utf8_decode(b);
  const std::size_t n = ca.size(), m = cb.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = prev[j - 1] + (ca[i - 1] != cb[j - 1]);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

int edit_distance_bounded(std::string_view a, std::string_view b, int limit) {
  if (limit < 0) throw std::invalid_argument("negative limit");
  const auto ca = utf8_decode(a);
  const auto cb = utf8_decode(b);
  const int n = static_cast<int>(ca.size()), m = static_cast<int>(cb.size());
  if (std::abs(n - m) > limit) return limit + 1;
  const int big = limit + 1;
  std::vector<int> prev(m + 1, big), cur(m + 1, big);
  for (int j = 0; j <= std::min(m, limit); ++j) prev[j] = j;
  for (int i = 1; i <= n; ++i) {
    const int jlo = std::max(1, i - limit), jhi = std::min(m, i + limit);
    cur[jlo - 1] = (i - limit <= 1) ? i : big;
    int row_min = cur[jlo - 1];
    for (int j = jlo; j <= jhi; ++j) {
      const int sub = prev[j - 1] + (ca[i - 1] != cb[j - 1]);
      const int del = prev[j] + 1;
      const int ins = cur[j - 1] + 1;
      cur[j] = std::min({sub, del, ins, big});
      row_min = std::min(row_min, cur[j]);
    }
    if (jhi < m) cur[jhi + 1] = big;
    if (row_min > limit) return limit + 1;
    std::swap(prev, cur);
  }
  return std::min(prev[m], big);
}

const std::string& MergeMap::resolve(const std::string& raw) const {
  const auto it = canonical.find(raw);
  return it == canonical.end() ? raw : it->second;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

MergeMap build_merge_map(const std::map<std::string, std::int64_t>& counts, int threshold) {
  std::vector<std::string> tags;
  std::vector<std::int64_t> freq;
  tags.reserve(counts.size());
  for (const auto& [tag, c] : counts) {
    if (c <= 0) throw std::invalid_argument("non-positive count for '" + tag + "'");
    tags.push_back(tag);
    freq.push_back(c);
  }
  const int n = static_cast<int>(tags.size());

  // Bucket by codepoint length so only pairs with |len diff| <= threshold
  // get a distance computation.
  std::vector<int> len(n);
  for (int i = 0; i < n; ++i) len[i] = static_cast<int>(utf8_decode(tags[i]).size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return len[a] < len[b]; });

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int oi = 0; oi < n; ++oi) {
    const int i = order[oi];
    for (int oj = oi + 1; oj < n; ++oj) {
      const int j = order[oj];
      if (len[j] - len[i] > threshold) break;
      if (edit_distance_bounded(tags[i], tags[j], threshold) <= threshold) {
        const int ri = find_root(parent, i), rj = find_root(parent, j);
        if (ri != rj) parent[ri] = rj;
      }
    }
  }

  // Component representative: highest count, then lexicographically smallest.
  std::vector<int> rep(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find_root(parent, i);
    if (rep[r] < 0 || freq[i] > freq[rep[r]] ||
        (freq[i] == freq[rep[r]] && tags[i] < tags[rep[r]]))
      rep[r] = i;
  }

  MergeMap out;
  for (int i = 0; i < n; ++i) {
    const int r = rep[find_root(parent, i)];
    if (r != i) out.canonical[tags[i]] = tags[r];
    out.frequencies[tags[r]] += freq[i];
  }
  return out;
}

}  // namespace semnet

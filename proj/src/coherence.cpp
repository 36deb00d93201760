// SPDX-License-Identifier: Apache-2.0
#include "trendkit/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "trendkit/errors.hpp"

namespace trendkit {

namespace {

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

long long WindowStats::count(const std::string& term) const {
  const auto it = term_ids.find(term);
  if (it == term_ids.end()) return 0;
  return term_window_counts[it->second];
}

long long WindowStats::joint(const std::string& a, const std::string& b) const {
  const auto ia = term_ids.find(a);
  const auto ib = term_ids.find(b);
  if (ia == term_ids.end() || ib == term_ids.end()) return 0;
  if (ia->second == ib->second) return term_window_counts[ia->second];
  const auto it = joint_counts.find(pair_key(ia->second, ib->second));
  return it == joint_counts.end() ? 0 : it->second;
}

WindowStats window_counts(const std::vector<TokenDoc>& docs,
                          const std::vector<std::string>& terms, int window) {
  if (window < 1) throw InvalidConfigError("window must be >= 1");
  WindowStats stats;
  for (const auto& t : terms)
    stats.term_ids.emplace(t, static_cast<int>(stats.term_ids.size()));
  stats.term_window_counts.assign(stats.term_ids.size(), 0);

  std::vector<int> occ(stats.term_ids.size(), 0);
  for (const auto& doc : docs) {
    const int len = static_cast<int>(doc.tokens.size());
    if (len == 0) continue;

    // Map once per doc; -1 marks tokens outside the query set.
    std::vector<int> ids(len, -1);
    for (int i = 0; i < len; ++i) {
      const auto it = stats.term_ids.find(doc.tokens[i]);
      if (it != stats.term_ids.end()) ids[i] = it->second;
    }

    const int eff_window = std::min(window, len);
    const int n_windows = len - eff_window + 1;
    std::fill(occ.begin(), occ.end(), 0);
    std::set<int> present;

    for (int i = 0; i < eff_window; ++i) {
      if (ids[i] >= 0 && occ[ids[i]]++ == 0) present.insert(ids[i]);
    }
    for (int start = 0;; ++start) {
      ++stats.total_windows;
      for (auto it = present.begin(); it != present.end(); ++it) {
        ++stats.term_window_counts[*it];
        for (auto jt = std::next(it); jt != present.end(); ++jt)
          ++stats.joint_counts[pair_key(*it, *jt)];
      }
      if (start + 1 >= n_windows) break;
      const int out = ids[start];
      if (out >= 0 && --occ[out] == 0) present.erase(out);
      const int in = ids[start + eff_window];
      if (in >= 0 && occ[in]++ == 0) present.insert(in);
    }
  }
  return stats;
}

double npmi(const WindowStats& stats, const std::string& i,
            const std::string& j, double eps) {
  const double nw = static_cast<double>(stats.total_windows);
  const long long ci = stats.count(i);
  const long long cj = stats.count(j);
  if (ci == 0 || cj == 0) return -1.0;
  const long long cij = stats.joint(i, j);
  if (cij == stats.total_windows) return 1.0;
  const double pi = ci / nw;
  const double pj = cj / nw;
  const double pij = cij / nw;
  const double value =
      std::log((pij + eps) / (pi * pj)) / (-std::log(pij + eps));
  return std::clamp(value, -1.0, 1.0);
}

CvResult cv_score(const std::vector<std::vector<std::string>>& topics,
                  const std::vector<TokenDoc>& docs, int window) {
  for (const auto& topic : topics) {
    if (topic.size() < 2)
      throw TopicTooSmallError("cv_score: topics need at least 2 terms");
  }

  std::set<std::string> term_union;
  for (const auto& topic : topics) term_union.insert(topic.begin(), topic.end());
  const std::vector<std::string> terms(term_union.begin(), term_union.end());

  const WindowStats stats = window_counts(docs, terms, window);
  if (stats.total_windows == 0)
    throw EmptyCorpusError("cv_score: no windows in the reference corpus");

  CvResult result;
  result.per_topic.reserve(topics.size());
  for (const auto& topic : topics) {
    const int n = static_cast<int>(topic.size());
    std::vector<std::vector<double>> context(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        context[a][b] = npmi(stats, topic[a], topic[b]);

    std::vector<double> sum(n, 0.0);
    for (const auto& v : context)
      for (int b = 0; b < n; ++b) sum[b] += v[b];

    double score = 0.0;
    for (const auto& v : context) score += cosine(v, sum);
    result.per_topic.push_back(score / n);
  }

  double overall = 0.0;
  for (double s : result.per_topic) overall += s;
  result.overall = topics.empty() ? 0.0 : overall / static_cast<double>(result.per_topic.size());
  return result;
}

}  // namespace trendkit

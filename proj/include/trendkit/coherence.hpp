// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "trendkit/textprep.hpp"
#include "trendkit/topic_model.hpp"

namespace trendkit {

/// Boolean sliding-window statistics over a tokenized corpus, restricted to
/// a requested term set.
struct WindowStats {
  long long total_windows = 0;  // N_w
  std::unordered_map<std::string, int> term_ids;
  std::vector<long long> term_window_counts;
  std::unordered_map<std::uint64_t, long long> joint_counts;  // id pair -> count

  long long count(const std::string& term) const;
  /// Windows containing both terms; joint(t, t) == count(t).
  long long joint(const std::string& a, const std::string& b) const;
};

/// Slides a `window`-token window with stride 1 over each document (a doc
/// shorter than the window contributes a single whole-doc window) and counts
/// boolean occurrences and co-occurrences of the requested terms.
WindowStats window_counts(const std::vector<TokenDoc>& docs,
                          const std::vector<std::string>& terms, int window);

/// Normalized pointwise mutual information from window statistics:
///   ln((p_ij + eps) / (p_i p_j)) / (-ln(p_ij + eps)), clamped to [-1, 1].
/// Returns -1 when either marginal is zero and 1 when the pair co-occurs in
/// every window (the eps-free limit).
double npmi(const WindowStats& stats, const std::string& i,
            const std::string& j, double eps = 1e-12);

struct CvResult {
  double overall = 0.0;
  std::vector<double> per_topic;
};

/// C_V coherence in its literature-standard configuration: boolean sliding
/// window (default 110), one-set segmentation over each topic's own terms,
/// NPMI context vectors, cosine similarity, arithmetic means. The reference
/// corpus is the modeled corpus itself.
CvResult cv_score(const std::vector<std::vector<std::string>>& topics,
                  const std::vector<TokenDoc>& docs, int window = 110);

/// One (feature set, model, K) sweep cell.
struct CoherenceCell {
  FeatureSetId set = FeatureSetId::Set1;
  ModelKind model = ModelKind::Lda;
  int k = 0;
  double cv = 0.0;
  std::vector<double> per_topic;
  std::vector<std::vector<std::pair<std::string, double>>> topics;
  std::string error;  // non-empty marks a failed cell

  bool failed() const { return !error.empty(); }
};

}  // namespace trendkit

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trendkit/lda.hpp"
#include "trendkit/lsa.hpp"
#include "trendkit/nmf.hpp"
#include "trendkit/textprep.hpp"
#include "trendkit/vectorize.hpp"

namespace trendkit {

enum class ModelKind { Lda, Nmf, Lsa };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view s);

/// A fitted topic model together with everything needed to interpret and
/// re-apply it: the vocabulary it was fitted on (hash-checked against the
/// corpus at load time), the feature set and weighting that produced its
/// matrix, and the per-document ids of the training rows.
struct FittedModel {
  ModelKind kind = ModelKind::Nmf;
  FeatureSetId feature_set = FeatureSetId::Set4;
  Weighting weighting = Weighting::TfIdf;
  std::uint64_t seed = 0;
  int topic_count = 0;
  // Vocabulary pruning used at fit time, needed to rebuild the vocabulary
  // for the corpus-match check.
  int fit_min_df = 1;
  double fit_max_df_ratio = 1.0;
  Vocabulary vocab;
  std::vector<double> idf;  // empty for Count weighting
  std::vector<std::string> doc_ids;
  std::variant<LdaModel, NmfModel, LsaModel> model;
};

/// Top-n (term, weight) pairs for one topic, resolved through the model's
/// vocabulary. LDA ranks by phi, NMF by H loadings, LSA by |U| loadings.
std::vector<std::pair<std::string, double>> topic_top_terms(
    const FittedModel& model, int topic, int n);

}  // namespace trendkit

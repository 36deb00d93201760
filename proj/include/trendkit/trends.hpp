// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trendkit/coherence.hpp"
#include "trendkit/topic_model.hpp"

namespace trendkit {

struct SweepGrid {
  std::vector<FeatureSetId> sets = {FeatureSetId::Set1, FeatureSetId::Set2,
                                    FeatureSetId::Set3, FeatureSetId::Set4};
  std::vector<ModelKind> models = {ModelKind::Lda, ModelKind::Nmf,
                                   ModelKind::Lsa};
  std::vector<int> k_values = {5, 10, 15};
};

struct SweepConfig {
  SweepGrid grid;
  int min_df = 5;
  double max_df_ratio = 0.5;
  int cv_window = 110;
  int top_n = 10;  // terms per topic fed to the coherence score
  std::uint64_t base_seed = 42;
  int jobs = 1;
  // Per-model hyperparameters; topic count and seed are set per cell.
  LdaConfig lda;
  NmfConfig nmf;
};

/// Called once per finished cell (under a lock when jobs > 1); failed cells
/// deliver no model.
using ModelSink = std::function<void(std::size_t cell_index,
                                     const CoherenceCell& cell,
                                     const FittedModel* model)>;

/// One cell per (K, set, model) in grid order (K outermost). Each cell
/// builds the set's documents, vectorizes with the model's weighting (Count
/// for LDA, tf-idf for NMF/LSA), fits with a seed derived from
/// (base_seed, set, model, K), and scores C_V on the top_n topic terms.
/// Failed cells carry an error marker instead of being dropped. The result
/// is identical for any jobs count.
std::vector<CoherenceCell> run_sweep(const std::vector<CleanRecord>& corpus,
                                     const SweepConfig& cfg,
                                     const PrepLists& lists,
                                     const ModelSink& sink = {});

/// Deterministic per-cell seed.
std::uint64_t cell_seed(std::uint64_t base_seed, FeatureSetId set,
                        ModelKind model, int k);

/// Argmax by cv over non-failed cells; ties prefer smaller K, then set
/// order, then model order LDA < NMF < LSA. Throws AllCellsFailedError.
CoherenceCell select_best(const std::vector<CoherenceCell>& cells);

inline constexpr int kUnclassified = -1;

/// Hard argmax topic per training document (theta row for LDA, normalized W
/// row for NMF, |doc vector| for LSA). NMF rows flagged uniform become
/// kUnclassified. Ties take the lower index.
std::vector<int> assign_topics(const FittedModel& model);

/// Same rule for documents not in the training matrix: NMF uses the
/// one-sided H-fixed fold-in, LSA the latent projection. LDA does not
/// support fold-in and throws.
std::vector<int> assign_new_docs(
    const FittedModel& model,
    const std::vector<std::vector<std::pair<int, double>>>& doc_rows);

struct TrendSeries {
  int topic = 0;  // kUnclassified for the unclassified bucket
  std::string label;
  std::map<int, long long> counts_by_year;
  long long total = 0;          // assigned docs with pub_year in range
  double share_percent = 0.0;   // 100 * total / docs in range
};

/// Per-topic yearly document counts inside [year_start, year_end]
/// (inclusive; unbounded when absent). Docs outside the range are excluded
/// from both counts and share denominators. An unclassified series is
/// appended when any in-range doc is unclassified.
std::vector<TrendSeries> yearly_series(const std::vector<int>& assignments,
                                       const std::vector<int>& pub_years,
                                       int topic_count,
                                       std::optional<int> year_start,
                                       std::optional<int> year_end);

/// Names series from a topic index -> label map; unnamed topics stay
/// "topic-<k>".
void attach_labels(std::vector<TrendSeries>& series,
                   const std::map<int, std::string>& labels);

/// Label file: "index<TAB>name" lines.
std::map<int, std::string> load_labels_file(const std::string& path);

/// Half-up rounding to two decimals, as printed in share tables.
std::string format_percent(double value);

}  // namespace trendkit

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trendkit/coherence.hpp"
#include "trendkit/trends.hpp"

namespace trendkit {

/// Sweep results: header "set,model,k,cv,error"; failed cells leave cv empty
/// and carry the error text.
std::string coherence_csv(const std::vector<CoherenceCell>& cells);

/// Parses the coherence_csv format back (per-topic details are not part of
/// the CSV and stay empty).
std::vector<CoherenceCell> read_coherence_csv(std::istream& in);

/// Per-topic sidecar for the sweep: per cell, the per-topic scores and top
/// terms as JSON.
std::string sweep_topics_json(const std::vector<CoherenceCell>& cells);

/// "topic,year,count" rows, years ascending within each series.
std::string trends_csv(const std::vector<TrendSeries>& series);

/// "topic,percent" rows, two-decimal half-up percentages.
std::string shares_csv(const std::vector<TrendSeries>& series);

struct ReportInputs {
  std::string corpus_path;
  int corpus_size = 0;
  std::vector<CoherenceCell> sweep;  // may be empty
  std::optional<CoherenceCell> best;
  std::string model_description;
  std::vector<std::vector<std::pair<std::string, double>>> topics;
  std::vector<std::string> topic_labels;
  std::vector<TrendSeries> series;
  std::optional<int> year_start;
  std::optional<int> year_end;
};

/// Human-readable markdown summary: sweep table, best cell, topic keywords,
/// yearly trend table and share percentages.
std::string render_report(const ReportInputs& inputs);

}  // namespace trendkit

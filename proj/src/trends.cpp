// SPDX-License-Identifier: Apache-2.0
#include "trendkit/trends.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "trendkit/errors.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

std::uint64_t cell_seed(std::uint64_t base_seed, FeatureSetId set,
                        ModelKind model, int k) {
  std::string tag(to_string(set));
  tag += '|';
  tag += to_string(model);
  tag += '|';
  tag += std::to_string(k);
  return SeededRng::derive_stream(base_seed, tag);
}

namespace {

struct SetData {
  std::vector<TokenDoc> docs;
  Vocabulary vocab;
  DocTermMatrix counts;
  DocTermMatrix weighted;  // tf-idf
  std::vector<double> idf;
  std::string error;  // set-level failure applies to all its cells
};

SetData prepare_set(const std::vector<CleanRecord>& corpus, FeatureSetId set,
                    const SweepConfig& cfg, const PrepLists& lists) {
  SetData data;
  if (corpus.empty()) {
    data.error = "empty corpus: no documents";
    return data;
  }
  for (const auto& rec : corpus) {
    if (auto doc = build_doc(rec, set, lists)) data.docs.push_back(std::move(*doc));
  }
  if (data.docs.empty()) {
    data.error = "empty corpus: no document produced tokens";
    return data;
  }
  try {
    data.vocab = build_vocab(data.docs, cfg.min_df, cfg.max_df_ratio);
    auto counted = count_matrix(data.docs, data.vocab);
    data.counts = std::move(counted.matrix);
    if (data.counts.doc_count == 0) {
      data.error = "empty corpus: all rows dropped";
      return data;
    }
    auto weighted = tfidf(data.counts);
    data.weighted = std::move(weighted.matrix);
    data.idf = std::move(weighted.idf);
  } catch (const Error& e) {
    data.error = e.what();
  }
  return data;
}

struct CellSpec {
  FeatureSetId set;
  ModelKind model;
  int k;
};

void run_cell(const CellSpec& spec, const SetData& data, const SweepConfig& cfg,
              CoherenceCell& cell, FittedModel& fitted, bool& have_model) {
  cell.set = spec.set;
  cell.model = spec.model;
  cell.k = spec.k;
  have_model = false;
  if (!data.error.empty()) {
    cell.error = data.error;
    return;
  }
  try {
    const std::uint64_t seed = cell_seed(cfg.base_seed, spec.set, spec.model, spec.k);
    fitted.kind = spec.model;
    fitted.feature_set = spec.set;
    fitted.seed = seed;
    fitted.topic_count = spec.k;
    fitted.fit_min_df = cfg.min_df;
    fitted.fit_max_df_ratio = cfg.max_df_ratio;
    fitted.vocab = data.vocab;
    fitted.doc_ids = data.counts.doc_ids;

    switch (spec.model) {
      case ModelKind::Lda: {
        LdaConfig lda = cfg.lda;
        lda.topics = spec.k;
        lda.seed = seed;
        fitted.weighting = Weighting::Count;
        fitted.idf.clear();
        fitted.model = fit_lda(data.counts, lda);
        break;
      }
      case ModelKind::Nmf: {
        NmfConfig nmf = cfg.nmf;
        nmf.rank = spec.k;
        nmf.seed = seed;
        fitted.weighting = Weighting::TfIdf;
        fitted.idf = data.idf;
        fitted.model = fit_nmf(data.weighted, nmf);
        break;
      }
      case ModelKind::Lsa: {
        fitted.weighting = Weighting::TfIdf;
        fitted.idf = data.idf;
        fitted.model = fit_lsa(data.weighted, spec.k, seed);
        break;
      }
    }

    std::vector<std::vector<std::string>> topic_terms;
    cell.topics.clear();
    for (int t = 0; t < spec.k; ++t) {
      auto terms = topic_top_terms(fitted, t, cfg.top_n);
      std::vector<std::string> names;
      names.reserve(terms.size());
      for (const auto& [name, _] : terms) names.push_back(name);
      topic_terms.push_back(std::move(names));
      cell.topics.push_back(std::move(terms));
    }

    const CvResult cv = cv_score(topic_terms, data.docs, cfg.cv_window);
    cell.cv = cv.overall;
    cell.per_topic = cv.per_topic;
    have_model = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.topics.clear();
    cell.per_topic.clear();
    cell.cv = 0.0;
  }
}

}  // namespace

std::vector<CoherenceCell> run_sweep(const std::vector<CleanRecord>& corpus,
                                     const SweepConfig& cfg,
                                     const PrepLists& lists,
                                     const ModelSink& sink) {
  if (cfg.grid.sets.empty() || cfg.grid.models.empty() ||
      cfg.grid.k_values.empty())
    throw InvalidConfigError("sweep grid must be nonempty in every dimension");

  std::map<FeatureSetId, SetData> set_data;
  for (FeatureSetId set : cfg.grid.sets) {
    if (!set_data.count(set))
      set_data.emplace(set, prepare_set(corpus, set, cfg, lists));
  }

  // Grid order: K outermost, then set, then model.
  std::vector<CellSpec> specs;
  for (int k : cfg.grid.k_values)
    for (FeatureSetId set : cfg.grid.sets)
      for (ModelKind model : cfg.grid.models) specs.push_back({set, model, k});

  std::vector<CoherenceCell> cells(specs.size());
  const int jobs = std::max(1, cfg.jobs);
  std::mutex sink_mutex;

  const auto worker_body = [&](std::size_t i) {
    FittedModel fitted;
    bool have_model = false;
    run_cell(specs[i], set_data.at(specs[i].set), cfg, cells[i], fitted,
             have_model);
    if (sink) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      sink(i, cells[i], have_model ? &fitted : nullptr);
    }
  };

  if (jobs == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) worker_body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(jobs, specs.size());
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= specs.size()) break;
          worker_body(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return cells;
}

CoherenceCell select_best(const std::vector<CoherenceCell>& cells) {
  const CoherenceCell* best = nullptr;
  for (const auto& cell : cells) {
    if (cell.failed()) continue;
    if (best == nullptr) {
      best = &cell;
      continue;
    }
    if (cell.cv > best->cv) {
      best = &cell;
    } else if (cell.cv == best->cv) {
      const auto rank = [](const CoherenceCell& c) {
        return std::make_tuple(c.k, static_cast<int>(c.set),
                               static_cast<int>(c.model));
      };
      if (rank(cell) < rank(*best)) best = &cell;
    }
  }
  if (best == nullptr) throw AllCellsFailedError("no sweep cell succeeded");
  return *best;
}

namespace {

int argmax_index(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

int argmax_abs_index(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  return best;
}

}  // namespace

std::vector<int> assign_topics(const FittedModel& model) {
  std::vector<int> out;
  if (const auto* lda = std::get_if<LdaModel>(&model.model)) {
    const int k = lda->config.topics;
    out.resize(lda->doc_count);
    for (int d = 0; d < lda->doc_count; ++d) {
      std::vector<double> row(lda->theta.begin() + static_cast<std::size_t>(d) * k,
                              lda->theta.begin() + static_cast<std::size_t>(d + 1) * k);
      out[d] = argmax_index(row);
    }
  } else if (const auto* nmf = std::get_if<NmfModel>(&model.model)) {
    out.resize(nmf->doc_count);
    for (int d = 0; d < nmf->doc_count; ++d) {
      const DocTopicMix mix = nmf_doc_topics(*nmf, d);
      out[d] = mix.flagged_uniform ? kUnclassified : argmax_index(mix.proportions);
    }
  } else if (const auto* lsa = std::get_if<LsaModel>(&model.model)) {
    out.resize(lsa->doc_count);
    for (int d = 0; d < lsa->doc_count; ++d)
      out[d] = argmax_abs_index(doc_vector(*lsa, d));
  }
  return out;
}

std::vector<int> assign_new_docs(
    const FittedModel& model,
    const std::vector<std::vector<std::pair<int, double>>>& doc_rows) {
  std::vector<int> out;
  out.reserve(doc_rows.size());
  if (const auto* nmf = std::get_if<NmfModel>(&model.model)) {
    for (const auto& row : doc_rows) {
      const DocTopicMix mix = nmf_fold_in(*nmf, row);
      out.push_back(mix.flagged_uniform ? kUnclassified
                                        : argmax_index(mix.proportions));
    }
  } else if (const auto* lsa = std::get_if<LsaModel>(&model.model)) {
    for (const auto& row : doc_rows) {
      std::vector<double> coords = lsa_fold_in(*lsa, row);
      for (int c = 0; c < lsa->k; ++c) coords[c] *= lsa->sigma[c];
      bool all_zero = std::all_of(coords.begin(), coords.end(),
                                  [](double v) { return v == 0.0; });
      out.push_back(all_zero ? kUnclassified : argmax_abs_index(coords));
    }
  } else {
    throw Error("fold-in is not supported for LDA models");
  }
  return out;
}

std::vector<TrendSeries> yearly_series(const std::vector<int>& assignments,
                                       const std::vector<int>& pub_years,
                                       int topic_count,
                                       std::optional<int> year_start,
                                       std::optional<int> year_end) {
  std::vector<TrendSeries> series(topic_count);
  for (int t = 0; t < topic_count; ++t) {
    series[t].topic = t;
    series[t].label = "topic-" + std::to_string(t);
  }
  TrendSeries unclassified;
  unclassified.topic = kUnclassified;
  unclassified.label = "unclassified";

  long long in_range = 0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const int year = pub_years[i];
    if (year_start && year < *year_start) continue;
    if (year_end && year > *year_end) continue;
    ++in_range;
    TrendSeries& dst =
        assignments[i] == kUnclassified ? unclassified : series[assignments[i]];
    ++dst.counts_by_year[year];
    ++dst.total;
  }
  if (unclassified.total > 0) series.push_back(std::move(unclassified));
  for (auto& s : series)
    s.share_percent =
        in_range > 0 ? 100.0 * static_cast<double>(s.total) / in_range : 0.0;
  return series;
}

void attach_labels(std::vector<TrendSeries>& series,
                   const std::map<int, std::string>& labels) {
  for (auto& s : series) {
    if (s.topic == kUnclassified) continue;
    const auto it = labels.find(s.topic);
    if (it != labels.end()) s.label = it->second;
  }
}

std::map<int, std::string> load_labels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labels file: " + path);
  std::map<int, std::string> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("labels file line " + std::to_string(line_no) +
                  ": expected index<TAB>name");
    try {
      labels[std::stoi(line.substr(0, tab))] = line.substr(tab + 1);
    } catch (...) {
      throw Error("labels file line " + std::to_string(line_no) +
                  ": bad topic index");
    }
  }
  return labels;
}

std::string format_percent(double value) {
  // Half-up at the second decimal.
  const double scaled = std::floor(value * 100.0 + 0.5) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", scaled);
  return buf;
}

}  // namespace trendkit

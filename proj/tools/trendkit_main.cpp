// SPDX-License-Identifier: Apache-2.0
//
// trendkit: corpus-to-trends pipeline driver.
//   ingest  parse/repair/dedupe bibliographic exports into a clean corpus
//   sweep   fit the (set, model, k) grid and score C_V coherence
//   trends  assign topics, aggregate yearly counts and shares, render report
//   report  re-render report.md from an output directory's artifacts

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trendkit/errors.hpp"
#include "trendkit/ingest.hpp"
#include "trendkit/model_io.hpp"
#include "trendkit/report.hpp"
#include "trendkit/trends.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

// Problems the user can fix: bad flags, missing files, mismatched inputs.
class UsageError : public trendkit::Error {
 public:
  using trendkit::Error::Error;
};

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::string format = "wos";
  std::string out_file;
  std::string out_dir;
  std::string corpus;
  std::string model_path;
  std::string dedupe_against;
  std::string labels_path;
  std::string stopwords_path;
  std::string domain_list_path;
  std::string fold_in_path;
  std::string config_path;
  std::string report_dir;
  std::optional<int> year_start;
  std::optional<int> year_end;
  std::vector<std::string> sets;
  std::vector<std::string> models;
  std::vector<int> k_values;
  std::uint64_t base_seed = 42;
  int jobs = 1;
  int min_df = 5;
  double max_df_ratio = 0.5;
  int cv_window = 110;
  int top_n = 10;
  trendkit::LdaConfig lda;
  trendkit::NmfConfig nmf;
};

void require_file(const std::string& path) {
  if (!fs::exists(path))
    throw UsageError("input file does not exist: " + path);
}

// Config file values fill any option the command line left untouched.
void merge_config(const std::string& path, CLI::App* cmd, Options& opt) {
  require_file(path);
  std::ifstream in(path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  const auto untouched = [&](const char* flag) {
    const CLI::Option* o = cmd->get_option_no_throw(flag);
    return o != nullptr && o->count() == 0;
  };
  const auto get_to = [&](const char* key, const char* flag, auto& dst) {
    if (cfg.contains(key) && !cfg[key].is_null() && untouched(flag))
      cfg[key].get_to(dst);
  };
  get_to("format", "--format", opt.format);
  get_to("sets", "--sets", opt.sets);
  get_to("models", "--models", opt.models);
  get_to("k_values", "--k", opt.k_values);
  get_to("base_seed", "--seed", opt.base_seed);
  get_to("jobs", "--jobs", opt.jobs);
  get_to("min_df", "--min-df", opt.min_df);
  get_to("max_df_ratio", "--max-df-ratio", opt.max_df_ratio);
  get_to("cv_window", "--cv-window", opt.cv_window);
  get_to("top_n", "--top-n", opt.top_n);
  get_to("stopwords", "--stopwords", opt.stopwords_path);
  get_to("domain_list", "--domain-list", opt.domain_list_path);
  get_to("labels", "--labels", opt.labels_path);
  if (cfg.contains("year_start") && !cfg["year_start"].is_null() &&
      untouched("--year-start"))
    opt.year_start = cfg["year_start"].get<int>();
  if (cfg.contains("year_end") && !cfg["year_end"].is_null() &&
      untouched("--year-end"))
    opt.year_end = cfg["year_end"].get<int>();
  if (cfg.contains("lda") && cfg["lda"].is_object()) {
    const auto& l = cfg["lda"];
    if (l.contains("alpha") && untouched("--lda-alpha")) l["alpha"].get_to(opt.lda.alpha);
    if (l.contains("beta") && untouched("--lda-beta")) l["beta"].get_to(opt.lda.beta);
    if (l.contains("iterations") && untouched("--lda-iterations"))
      l["iterations"].get_to(opt.lda.iterations);
    if (l.contains("burn_in") && untouched("--lda-burn-in"))
      l["burn_in"].get_to(opt.lda.burn_in);
  }
  if (cfg.contains("nmf") && cfg["nmf"].is_object()) {
    const auto& n = cfg["nmf"];
    if (n.contains("max_iter") && untouched("--nmf-max-iter"))
      n["max_iter"].get_to(opt.nmf.max_iter);
    if (n.contains("tol") && untouched("--nmf-tol")) n["tol"].get_to(opt.nmf.tol);
    if (n.contains("epsilon") && untouched("--nmf-epsilon"))
      n["epsilon"].get_to(opt.nmf.epsilon);
  }
}

trendkit::PrepLists resolve_lists(const Options& opt) {
  trendkit::PrepLists lists = trendkit::PrepLists::defaults();
  if (!opt.stopwords_path.empty()) {
    require_file(opt.stopwords_path);
    lists.stopwords.clear();
    for (auto& w : trendkit::load_word_list(opt.stopwords_path))
      lists.stopwords.insert(std::move(w));
  }
  if (!opt.domain_list_path.empty()) {
    require_file(opt.domain_list_path);
    lists.domain_stems.clear();
    for (auto& w : trendkit::load_word_list(opt.domain_list_path))
      lists.domain_stems.insert(std::move(w));
  }
  return lists;
}

ordered_json resolved_config(const Options& opt) {
  ordered_json cfg;
  cfg["command"] = opt.command;
  if (!opt.inputs.empty()) cfg["inputs"] = opt.inputs;
  if (!opt.format.empty()) cfg["format"] = opt.format;
  if (!opt.corpus.empty()) cfg["corpus"] = opt.corpus;
  if (!opt.out_file.empty()) cfg["out"] = opt.out_file;
  if (!opt.out_dir.empty()) cfg["out_dir"] = opt.out_dir;
  if (!opt.model_path.empty()) cfg["model"] = opt.model_path;
  if (!opt.dedupe_against.empty()) cfg["dedupe_against"] = opt.dedupe_against;
  if (!opt.fold_in_path.empty()) cfg["fold_in"] = opt.fold_in_path;
  cfg["year_start"] = opt.year_start ? ordered_json(*opt.year_start) : ordered_json(nullptr);
  cfg["year_end"] = opt.year_end ? ordered_json(*opt.year_end) : ordered_json(nullptr);
  if (opt.command == "sweep") {
    cfg["sets"] = opt.sets;
    cfg["models"] = opt.models;
    cfg["k_values"] = opt.k_values;
    cfg["base_seed"] = opt.base_seed;
    cfg["jobs"] = opt.jobs;
    cfg["min_df"] = opt.min_df;
    cfg["max_df_ratio"] = opt.max_df_ratio;
    cfg["cv_window"] = opt.cv_window;
    cfg["top_n"] = opt.top_n;
    cfg["lda"] = {{"alpha", opt.lda.alpha},
                  {"beta", opt.lda.beta},
                  {"iterations", opt.lda.iterations},
                  {"burn_in", opt.lda.burn_in}};
    cfg["nmf"] = {{"max_iter", opt.nmf.max_iter},
                  {"tol", opt.nmf.tol},
                  {"epsilon", opt.nmf.epsilon}};
  }
  cfg["stopwords"] = opt.stopwords_path.empty() ? ordered_json(nullptr)
                                                : ordered_json(opt.stopwords_path);
  cfg["domain_list"] = opt.domain_list_path.empty()
                           ? ordered_json(nullptr)
                           : ordered_json(opt.domain_list_path);
  if (opt.command == "trends")
    cfg["labels"] = opt.labels_path.empty() ? ordered_json(nullptr)
                                            : ordered_json(opt.labels_path);
  return cfg;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw trendkit::Error("cannot write " + path.string());
  out << text;
}

void write_run_json(const fs::path& dir, const Options& opt) {
  write_text_file(dir / "run.json", resolved_config(opt).dump(2) + "\n");
}

int cmd_ingest(const Options& opt) {
  using namespace trendkit;
  const ExportFormat format = opt.format == "jsonl"
                                  ? ExportFormat::JsonLines
                                  : ExportFormat::WosTabDelimited;
  if (opt.format != "jsonl" && opt.format != "wos")
    throw UsageError("unknown format: " + opt.format + " (expected wos or jsonl)");

  std::vector<BibRecord> all;
  int skipped_total = 0;
  for (const auto& path : opt.inputs) {
    require_file(path);
    std::ifstream in(path, std::ios::binary);
    ParseResult parsed = parse_export(in, format);
    std::printf("%s: %zu records parsed, %zu lines skipped\n", path.c_str(),
                parsed.records.size(), parsed.skipped.size());
    for (const auto& skip : parsed.skipped)
      std::printf("  line %d skipped: %s\n", skip.line_no, skip.reason.c_str());
    skipped_total += static_cast<int>(parsed.skipped.size());
    all.insert(all.end(), parsed.records.begin(), parsed.records.end());
  }

  const std::vector<BibRecord> typed = filter_types(all);
  const int type_dropped = static_cast<int>(all.size() - typed.size());
  RepairResult repaired = repair(typed);

  std::unordered_set<std::string> existing;
  if (!opt.dedupe_against.empty()) {
    require_file(opt.dedupe_against);
    for (const auto& rec : read_clean_jsonl_file(opt.dedupe_against))
      existing.insert(rec.id);
  }
  DedupeResult deduped = dedupe(repaired.records, existing);

  write_clean_jsonl_file(opt.out_file, deduped.records);
  const fs::path out_dir = fs::path(opt.out_file).parent_path();
  write_run_json(out_dir.empty() ? fs::path(".") : out_dir, opt);

  std::printf("ingest summary\n");
  std::printf("  parsed:             %zu (+%d skipped lines)\n", all.size(),
              skipped_total);
  std::printf("  type filter kept:   %zu (dropped %d)\n", typed.size(),
              type_dropped);
  std::printf("  repair kept:        %d (dropped %d)\n",
              repaired.summary.survived, repaired.summary.dropped);
  for (const auto& [field, count] : repaired.summary.missing_counts)
    std::printf("    missing %-10s %d\n", (field + ":").c_str(), count);
  std::printf("  years from early access: %d\n",
              repaired.summary.years_filled_from_early_access);
  std::printf("  dedupe removed:     %d existing, %d intra-batch\n",
              deduped.removed_existing, deduped.removed_intra);
  std::printf("  written:            %zu -> %s\n", deduped.records.size(),
              opt.out_file.c_str());
  return kExitOk;
}

trendkit::SweepConfig sweep_config_from(const Options& opt) {
  using namespace trendkit;
  SweepConfig cfg;
  cfg.grid.sets.clear();
  for (const auto& s : opt.sets) {
    const auto set = parse_feature_set(s);
    if (!set) throw UsageError("unknown feature set: " + s);
    cfg.grid.sets.push_back(*set);
  }
  cfg.grid.models.clear();
  for (const auto& m : opt.models) {
    const auto kind = parse_model_kind(m);
    if (!kind) throw UsageError("unknown model: " + m);
    cfg.grid.models.push_back(*kind);
  }
  cfg.grid.k_values = opt.k_values;
  for (int k : cfg.grid.k_values)
    if (k < 1) throw UsageError("k values must be >= 1");
  cfg.min_df = opt.min_df;
  cfg.max_df_ratio = opt.max_df_ratio;
  cfg.cv_window = opt.cv_window;
  cfg.top_n = opt.top_n;
  cfg.base_seed = opt.base_seed;
  cfg.jobs = opt.jobs;
  cfg.lda = opt.lda;
  cfg.nmf = opt.nmf;
  return cfg;
}

int cmd_sweep(const Options& opt) {
  using namespace trendkit;
  require_file(opt.corpus);
  const std::vector<CleanRecord> corpus = read_clean_jsonl_file(opt.corpus);
  const SweepConfig cfg = sweep_config_from(opt);
  const PrepLists lists = resolve_lists(opt);

  const fs::path out_dir(opt.out_dir);
  fs::create_directories(out_dir / "models");

  std::vector<std::string> model_files;
  const ModelSink sink = [&](std::size_t, const CoherenceCell& cell,
                             const FittedModel* model) {
    if (model == nullptr) return;
    std::string name = std::string(to_string(cell.set)) + "_" +
                       std::string(to_string(cell.model)) + "_k" +
                       std::to_string(cell.k) + ".json";
    save_model_file((out_dir / "models" / name).string(), *model);
    model_files.push_back(std::move(name));
  };

  const std::vector<CoherenceCell> cells = run_sweep(corpus, cfg, lists, sink);

  write_text_file(out_dir / "coherence.csv", coherence_csv(cells));
  write_text_file(out_dir / "sweep_topics.json", sweep_topics_json(cells));
  write_run_json(out_dir, opt);

  const CoherenceCell best = select_best(cells);
  std::printf("sweep: %zu cells, %zu model files under %s\n", cells.size(),
              model_files.size(), (out_dir / "models").string().c_str());
  std::printf("best cell: model=%s set=%s k=%d cv=%.4f\n",
              std::string(to_string(best.model)).c_str(),
              std::string(to_string(best.set)).c_str(), best.k, best.cv);
  return kExitOk;
}

int cmd_trends(const Options& opt) {
  using namespace trendkit;
  if (opt.year_start && opt.year_end && *opt.year_start > *opt.year_end)
    throw UsageError("--year-start must not exceed --year-end");
  require_file(opt.model_path);
  require_file(opt.corpus);
  const FittedModel model = load_model_file(opt.model_path);
  if (!opt.fold_in_path.empty() && model.kind == ModelKind::Lda)
    throw UsageError("--fold-in is not supported for LDA models "
                     "(refit on the extended corpus instead)");
  const std::vector<CleanRecord> corpus = read_clean_jsonl_file(opt.corpus);
  const PrepLists lists = resolve_lists(opt);

  // The model must have been fitted on this corpus: rebuild the feature
  // set's vocabulary and compare hashes.
  std::vector<TokenDoc> docs;
  for (const auto& rec : corpus)
    if (auto doc = build_doc(rec, model.feature_set, lists))
      docs.push_back(std::move(*doc));
  if (docs.empty()) throw Error("corpus produced no tokens for the model's feature set");
  Vocabulary rebuilt = build_vocab(docs, model.fit_min_df, model.fit_max_df_ratio);
  if (rebuilt.hash() != model.vocab.hash()) {
    throw VocabMismatchError(
        "model/corpus mismatch: vocabulary hash differs (model " +
        std::string(to_string(model.feature_set)) +
        " vs corpus rebuild); was the model fitted on this corpus?");
  }

  std::unordered_map<std::string, int> year_by_id;
  for (const auto& rec : corpus) year_by_id[rec.id] = rec.pub_year;
  std::vector<int> years;
  years.reserve(model.doc_ids.size());
  for (const auto& id : model.doc_ids) {
    const auto it = year_by_id.find(id);
    if (it == year_by_id.end())
      throw VocabMismatchError("model/corpus mismatch: training doc " + id +
                               " not present in corpus");
    years.push_back(it->second);
  }

  const std::vector<int> assignments = assign_topics(model);
  std::vector<TrendSeries> series = yearly_series(
      assignments, years, model.topic_count, opt.year_start, opt.year_end);

  std::map<int, std::string> labels;
  if (!opt.labels_path.empty()) {
    require_file(opt.labels_path);
    labels = load_labels_file(opt.labels_path);
  }
  attach_labels(series, labels);

  const fs::path out_dir(opt.out_dir);
  fs::create_directories(out_dir);
  write_text_file(out_dir / "trends.csv", trends_csv(series));
  write_text_file(out_dir / "shares.csv", shares_csv(series));

  ReportInputs report;
  report.corpus_path = opt.corpus;
  report.corpus_size = static_cast<int>(corpus.size());
  report.model_description = std::string(to_string(model.kind)) + " on " +
                             std::string(to_string(model.feature_set)) +
                             ", k=" + std::to_string(model.topic_count);

  // Models live under <sweep dir>/models/, so the sweep table is usually
  // one level up; include it in the report when present.
  const fs::path sweep_csv =
      fs::path(opt.model_path).parent_path().parent_path() / "coherence.csv";
  if (fs::exists(sweep_csv)) {
    std::ifstream csv_in(sweep_csv);
    try {
      report.sweep = read_coherence_csv(csv_in);
      report.best = select_best(report.sweep);
    } catch (const Error&) {
      report.sweep.clear();
      report.best.reset();
    }
  }
  for (int t = 0; t < model.topic_count; ++t)
    report.topics.push_back(topic_top_terms(model, t, opt.top_n));
  for (int t = 0; t < model.topic_count; ++t) {
    const auto it = labels.find(t);
    report.topic_labels.push_back(it != labels.end()
                                      ? it->second
                                      : "topic-" + std::to_string(t));
  }
  report.series = series;
  report.year_start = opt.year_start;
  report.year_end = opt.year_end;

  // Machine-readable copy so `report` can re-render without refitting.
  ordered_json data;
  data["model_description"] = report.model_description;
  data["corpus_path"] = report.corpus_path;
  data["corpus_size"] = report.corpus_size;
  if (!report.sweep.empty()) {
    data["sweep"] = ordered_json::array();
    for (const auto& cell : report.sweep) {
      data["sweep"].push_back({{"set", std::string(to_string(cell.set))},
                               {"model", std::string(to_string(cell.model))},
                               {"k", cell.k},
                               {"cv", cell.cv},
                               {"error", cell.error}});
    }
  }
  data["year_start"] = opt.year_start ? ordered_json(*opt.year_start) : ordered_json(nullptr);
  data["year_end"] = opt.year_end ? ordered_json(*opt.year_end) : ordered_json(nullptr);
  data["topics"] = ordered_json::array();
  for (std::size_t t = 0; t < report.topics.size(); ++t) {
    ordered_json topic;
    topic["label"] = report.topic_labels[t];
    topic["terms"] = ordered_json::array();
    for (const auto& [term, weight] : report.topics[t])
      topic["terms"].push_back({{"term", term}, {"weight", weight}});
    data["topics"].push_back(std::move(topic));
  }
  data["series"] = ordered_json::array();
  for (const auto& s : series) {
    ordered_json entry;
    entry["topic"] = s.topic;
    entry["label"] = s.label;
    entry["total"] = s.total;
    entry["share_percent"] = s.share_percent;
    entry["counts_by_year"] = ordered_json::object();
    for (const auto& [year, count] : s.counts_by_year)
      entry["counts_by_year"][std::to_string(year)] = count;
    data["series"].push_back(std::move(entry));
  }
  write_text_file(out_dir / "trend_data.json", data.dump(2) + "\n");
  write_text_file(out_dir / "report.md", render_report(report));
  write_run_json(out_dir, opt);

  if (!opt.fold_in_path.empty()) {
    require_file(opt.fold_in_path);
    std::vector<CleanRecord> fresh = read_clean_jsonl_file(opt.fold_in_path);
    std::unordered_set<std::string> trained_ids(model.doc_ids.begin(),
                                                model.doc_ids.end());
    const DedupeResult dd = dedupe(fresh, trained_ids);
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<int> kept;
    for (const auto& rec : dd.records) {
      auto doc = build_doc(rec, model.feature_set, lists);
      if (!doc) continue;
      auto row = vectorize_new_doc(*doc, model.vocab, model.idf);
      if (row.empty()) continue;
      rows.push_back(std::move(row));
      kept.push_back(rec.pub_year);
    }
    const std::vector<int> fold_assignments = assign_new_docs(model, rows);
    std::vector<long long> counts(model.topic_count, 0);
    long long unclassified = 0;
    for (int a : fold_assignments)
      a == kUnclassified ? ++unclassified : ++counts[a];
    std::ostringstream csv;
    csv << "topic,count,percent\n";
    const double total = static_cast<double>(fold_assignments.size());
    for (int t = 0; t < model.topic_count; ++t) {
      const auto it = labels.find(t);
      const std::string label =
          it != labels.end() ? it->second : "topic-" + std::to_string(t);
      csv << label << ',' << counts[t] << ','
          << format_percent(total > 0 ? 100.0 * counts[t] / total : 0.0)
          << '\n';
    }
    if (unclassified > 0)
      csv << "unclassified," << unclassified << ','
          << format_percent(total > 0 ? 100.0 * unclassified / total : 0.0)
          << '\n';
    write_text_file(out_dir / "fold_in_shares.csv", csv.str());
    std::printf("fold-in: %zu new docs scored (%d duplicates removed)\n",
                fold_assignments.size(),
                dd.removed_existing + dd.removed_intra);
  }

  std::printf("trends: %zu series -> %s\n", series.size(),
              out_dir.string().c_str());
  return kExitOk;
}

int cmd_report(const Options& opt) {
  using namespace trendkit;
  const fs::path dir(opt.report_dir);
  const fs::path data_path = dir / "trend_data.json";
  require_file(data_path.string());
  std::ifstream in(data_path);
  nlohmann::json data;
  in >> data;

  ReportInputs report;
  report.corpus_path = data.value("corpus_path", "");
  report.corpus_size = data.value("corpus_size", 0);
  report.model_description = data.value("model_description", "");
  if (data.contains("year_start") && !data["year_start"].is_null())
    report.year_start = data["year_start"].get<int>();
  if (data.contains("year_end") && !data["year_end"].is_null())
    report.year_end = data["year_end"].get<int>();
  if (data.contains("sweep")) {
    for (const auto& c : data["sweep"]) {
      CoherenceCell cell;
      const auto set = parse_feature_set(c.at("set").get<std::string>());
      const auto model = parse_model_kind(c.at("model").get<std::string>());
      if (!set || !model) continue;
      cell.set = *set;
      cell.model = *model;
      cell.k = c.at("k").get<int>();
      cell.cv = c.at("cv").get<double>();
      cell.error = c.at("error").get<std::string>();
      report.sweep.push_back(std::move(cell));
    }
    if (!report.sweep.empty()) {
      try {
        report.best = select_best(report.sweep);
      } catch (const Error&) {
      }
    }
  }
  for (const auto& topic : data["topics"]) {
    report.topic_labels.push_back(topic.at("label").get<std::string>());
    std::vector<std::pair<std::string, double>> terms;
    for (const auto& t : topic.at("terms"))
      terms.emplace_back(t.at("term").get<std::string>(),
                         t.at("weight").get<double>());
    report.topics.push_back(std::move(terms));
  }
  for (const auto& s : data["series"]) {
    TrendSeries series;
    series.topic = s.at("topic").get<int>();
    series.label = s.at("label").get<std::string>();
    series.total = s.at("total").get<long long>();
    series.share_percent = s.at("share_percent").get<double>();
    for (const auto& [year, count] : s.at("counts_by_year").items())
      series.counts_by_year[std::stoi(year)] = count.get<long long>();
    report.series.push_back(std::move(series));
  }

  write_text_file(dir / "report.md", render_report(report));
  std::printf("report: rewrote %s\n", (dir / "report.md").string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trendkit: topic-model research-trend pipeline"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* ingest = app.add_subcommand("ingest", "Parse and clean exports");
  ingest->add_option("--in", opt.inputs, "Export file(s)")->required();
  ingest->add_option("--format", opt.format, "wos or jsonl");
  ingest->add_option("--out", opt.out_file, "Clean corpus JsonLines path")->required();
  ingest->add_option("--dedupe-against", opt.dedupe_against,
                     "Existing clean corpus; overlapping ids are removed");

  CLI::App* sweep = app.add_subcommand("sweep", "Coherence sweep over the grid");
  sweep->add_option("--corpus", opt.corpus, "Clean corpus JsonLines")->required();
  sweep->add_option("--out", opt.out_dir, "Output directory")->required();
  sweep->add_option("--config", opt.config_path, "JSON config; flags win");
  sweep->add_option("--sets", opt.sets, "Feature sets (set1..set4)");
  sweep->add_option("--models", opt.models, "Models (lda nmf lsa)");
  sweep->add_option("--k", opt.k_values, "Topic counts");
  sweep->add_option("--seed", opt.base_seed, "Base seed");
  sweep->add_option("--jobs", opt.jobs, "Concurrent sweep cells");
  sweep->add_option("--min-df", opt.min_df, "Vocabulary min document frequency");
  sweep->add_option("--max-df-ratio", opt.max_df_ratio, "Vocabulary max df ratio");
  sweep->add_option("--cv-window", opt.cv_window, "C_V sliding window");
  sweep->add_option("--top-n", opt.top_n, "Topic terms scored");
  sweep->add_option("--lda-alpha", opt.lda.alpha, "LDA alpha (0 = 50/K)");
  sweep->add_option("--lda-beta", opt.lda.beta, "LDA beta");
  sweep->add_option("--lda-iterations", opt.lda.iterations, "LDA sweeps");
  sweep->add_option("--lda-burn-in", opt.lda.burn_in, "LDA burn-in sweeps");
  sweep->add_option("--nmf-max-iter", opt.nmf.max_iter, "NMF max iterations");
  sweep->add_option("--nmf-tol", opt.nmf.tol, "NMF relative tolerance");
  sweep->add_option("--nmf-epsilon", opt.nmf.epsilon, "NMF denominator floor");
  sweep->add_option("--stopwords", opt.stopwords_path, "Stopword list override");
  sweep->add_option("--domain-list", opt.domain_list_path,
                    "Domain stem list override");

  CLI::App* trends = app.add_subcommand("trends", "Yearly trends for a model");
  trends->add_option("--model", opt.model_path, "Fitted model JSON")->required();
  trends->add_option("--corpus", opt.corpus, "Clean corpus the model was fitted on")->required();
  trends->add_option("--out", opt.out_dir, "Output directory")->required();
  trends->add_option("--config", opt.config_path, "JSON config; flags win");
  trends->add_option("--labels", opt.labels_path, "Topic label file (index<TAB>name)");
  trends->add_option("--year-start", opt.year_start, "First year counted");
  trends->add_option("--year-end", opt.year_end, "Last year counted");
  trends->add_option("--fold-in", opt.fold_in_path,
                     "New clean corpus to score against the fixed model");
  trends->add_option("--top-n", opt.top_n, "Topic terms in the report");
  trends->add_option("--stopwords", opt.stopwords_path, "Stopword list override");
  trends->add_option("--domain-list", opt.domain_list_path,
                     "Domain stem list override");

  CLI::App* report = app.add_subcommand("report", "Re-render report.md");
  report->add_option("--dir", opt.report_dir, "trends output directory")->required();

  // Default grid: four feature sets, three models, three topic counts.
  opt.sets = {"set1", "set2", "set3", "set4"};
  opt.models = {"lda", "nmf", "lsa"};
  opt.k_values = {5, 10, 15};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      opt.command = "ingest";
      return cmd_ingest(opt);
    }
    if (sweep->parsed()) {
      opt.command = "sweep";
      if (!opt.config_path.empty()) merge_config(opt.config_path, sweep, opt);
      return cmd_sweep(opt);
    }
    if (trends->parsed()) {
      opt.command = "trends";
      if (!opt.config_path.empty()) merge_config(opt.config_path, trends, opt);
      return cmd_trends(opt);
    }
    if (report->parsed()) {
      opt.command = "report";
      return cmd_report(opt);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const trendkit::VocabMismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const trendkit::UnsupportedHeaderError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const trendkit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
